"""Assertion parsing errors.

Two failure modes are kept apart on purpose: text that is simply malformed
(SvaSyntaxError, repairable by a syntax corrector) and text that is
recognisably legal SVA using features beyond the supported fragment
(OutOfFragment). Both end up in the Error metric bucket, but records keep
the distinction.
"""

from __future__ import annotations


class SvaError(Exception):
    pass


class SvaSyntaxError(SvaError):
    def __init__(self, message: str, offset: int):
        self.message = message
        self.offset = offset
        super().__init__(f"syntax error at offset {offset}: {message}")


class OutOfFragment(SvaError):
    def __init__(self, construct: str, offset: int):
        self.construct = construct
        self.offset = offset
        super().__init__(f"out of fragment at offset {offset}: {construct}")
