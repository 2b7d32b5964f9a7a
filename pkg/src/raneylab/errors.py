"""Exception hierarchy shared by every module of the workbench."""

from __future__ import annotations


class RaneyError(Exception):
    """Base class for all workbench errors."""


class NotAPartialOrder(RaneyError):
    pass


class NotALattice(RaneyError):
    def __init__(self, pair: tuple[int, int], missing: str):
        self.pair = pair
        self.missing = missing
        super().__init__(f"elements {pair[0]} and {pair[1]} have no {missing}")


class NotAFrame(RaneyError):
    pass


class NotACoframe(RaneyError):
    pass


class SizeCap(RaneyError):
    pass


class ConfigError(RaneyError):
    pass


class OracleMismatch(RaneyError):
    """Two independent computations disagreed. Always an implementation bug."""


class MissingPrincipal(RaneyError):
    def __init__(self, element: int):
        self.element = element
        super().__init__(f"principal filter of element {element} is missing")


class NotSubcolocale(RaneyError):
    def __init__(self, witness: dict):
        self.witness = witness
        super().__init__(f"collection is not a sublocale of the filter frame: {witness}")


class NotStronglyExact(RaneyError):
    def __init__(self, carrier: int):
        self.carrier = carrier
        super().__init__(f"filter with carrier {carrier:#b} is not strongly exact")


class NotSubfit(RaneyError):
    pass


class NotAFrameMap(RaneyError):
    pass


class NotT0(RaneyError):
    pass


class UnknownPoint(RaneyError):
    pass


class ParseError(RaneyError):
    def __init__(self, message: str, line: int, column: int = 1):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class NotATopology(RaneyError):
    pass
