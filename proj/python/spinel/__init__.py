"""Spine-local type inference for System F."""

import json

from . import _core
from ._core import EngineBug, InternalTypeError, ParseError, erasures, internal_type, match, pretty_type

__all__ = [
    "EngineBug",
    "InternalTypeError",
    "ParseError",
    "Session",
    "erasures",
    "internal_type",
    "match",
    "pretty_type",
    "run",
]


def run(source, trace=False, spec_verify=False):
    """Run a program's goals; one report dict per goal, in file order."""
    return [json.loads(r) for r in _core.run(source, trace, spec_verify)]


class Session:
    """A growing context; statements are the program syntax, `.` optional."""

    def __init__(self, decls=""):
        self._s = _core.Session(decls)

    def run(self, statement, trace=False, spec_verify=False):
        r = self._s.run(statement, trace, spec_verify)
        return None if r is None else json.loads(r)

    def declare(self, statement):
        if self._s.run(statement, False, False) is not None:
            raise ValueError("not a declaration: " + statement)

    def synth(self, term):
        return self.run("synth " + term)

    def check(self, term, expected):
        return self.run("check " + term + " : " + expected)

    def render(self, goal, color=False):
        return self._s.render(goal, color)

    def context(self):
        return self._s.context()
