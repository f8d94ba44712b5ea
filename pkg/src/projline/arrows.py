"""Arrows of a projective-line groupoid, generic over the point type.

A hom-set L(A, A) is the scalar group k*; for A != B the hom-set L(A, B) is
labelled by the points other than A and B.  Composition is written left to
right: ``compose(f, g)`` means "f, then g".
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Hashable, Union

from .errors import InvalidArrow, ParseError
from .scalars import FieldContext, Scalar


@dataclass(frozen=True)
class ScalarArrow:
    at: Hashable
    lam: Scalar

    def __post_init__(self):
        if not self.lam:
            raise InvalidArrow("scalar loops need a nonzero scalar")

    @property
    def src(self):
        return self.at

    @property
    def dst(self):
        return self.at

    def __str__(self):
        return f"{self.at}*{self.lam}"


@dataclass(frozen=True)
class LabeledArrow:
    """The arrow (dir : src -> dst)."""

    src: Hashable
    dst: Hashable
    dir: Hashable

    def __post_init__(self):
        if len({self.src, self.dst, self.dir}) != 3:
            raise InvalidArrow(f"labeled arrow needs three distinct points: {self.src}, {self.dst}, {self.dir}")

    def __str__(self):
        return f"{self.src}>{self.dst}@{self.dir}"


Arrow = Union[ScalarArrow, LabeledArrow]


def arrow_to_json(f: Arrow, point_str: Callable[[Any], str] = str) -> dict:
    if isinstance(f, ScalarArrow):
        return {"scalar": {"at": point_str(f.at), "lambda": str(f.lam)}}
    return {"labeled": {"src": point_str(f.src), "dst": point_str(f.dst), "dir": point_str(f.dir)}}


def arrow_from_json(obj: dict, ctx: FieldContext, point_of: Callable[[str], Any] = lambda s: s) -> Arrow:
    try:
        if set(obj) == {"scalar"}:
            body = obj["scalar"]
            return ScalarArrow(point_of(body["at"]), ctx.parse(str(body["lambda"])))
        if set(obj) == {"labeled"}:
            body = obj["labeled"]
            return LabeledArrow(point_of(body["src"]), point_of(body["dst"]), point_of(body["dir"]))
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed arrow {obj!r}") from exc
    raise ParseError(f"malformed arrow {obj!r}")


def parse_arrow(text: str, ctx: FieldContext, point_of: Callable[[str], Any] = lambda s: s) -> Arrow:
    """Parse ``SRC>DST@DIR`` (labeled) or ``AT*LAMBDA`` (scalar loop)."""
    text = text.strip()
    if "*" in text:
        at, lam = text.rsplit("*", 1)
        return ScalarArrow(point_of(at), ctx.parse(lam))
    if ">" in text and "@" in text:
        head, direction = text.rsplit("@", 1)
        src, dst = head.split(">", 1)
        return LabeledArrow(point_of(src), point_of(dst), point_of(direction))
    raise ParseError(f"cannot parse arrow {text!r}; expected SRC>DST@DIR or AT*LAMBDA")
