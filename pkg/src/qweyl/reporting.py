"""Shared pass/fail check records used by the verification suites."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""

    @property
    def status(self) -> str:
        return "pass" if self.ok else "fail"


def all_ok(checks) -> bool:
    return all(c.ok for c in checks)
