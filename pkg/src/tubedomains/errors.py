"""Exception hierarchy. Every error raised by the engine derives from TubeError."""

from __future__ import annotations


class TubeError(ValueError):
    pass


class ZeroLambda(TubeError):
    pass


class TooFewPoints(TubeError):
    pass


class EmptyConfig(TubeError):
    pass


class NotRealConfig(TubeError):
    pass


class WrongArity(TubeError):
    pass


class BadArity(TubeError):
    pass


class DegenerateCoordinate(TubeError):
    pass


class NotOnBoundary(TubeError):
    pass


class ArityGuard(TubeError):
    pass


class NotTotallySpacelike(TubeError):
    def __init__(self, pair: tuple[int, int], square):
        self.pair = pair
        self.square = square
        super().__init__(f"points {pair[0]} and {pair[1]} are not space-like separated (square {square})")


class ProbeOutsideFormula(TubeError):
    pass


class BadDimension(TubeError):
    pass


class BadOrder(TubeError):
    pass


class NotMember(TubeError):
    pass


class BadR(TubeError):
    pass


class EmptyBase(TubeError):
    pass


class NonAxisBase(TubeError):
    pass


class ParseError(TubeError):
    def __init__(self, msg: str, line: int | None = None, col: int | None = None):
        self.line = line
        self.col = col
        where = f" (line {line}, column {col})" if line is not None else ""
        super().__init__(msg + where)


class NonCanonicalRational(ParseError):
    pass


class FloatLiteralRejected(ParseError):
    pass
