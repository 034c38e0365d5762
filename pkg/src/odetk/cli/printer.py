"""Text rendering that the parser reads back to the same value."""

from __future__ import annotations

from ..arith import RatFunc, _is_atomic, frac_str, poly_str, ratfunc_str


def _dpow(i: int) -> str:
    return "" if i == 0 else ("D" if i == 1 else f"D^{i}")


def _coeff_times(c: RatFunc, mono: str) -> str:
    """Render c * mono for a coefficient c with positive leading sign."""
    if not mono:
        return ratfunc_str(c)
    if c == 1:
        return mono
    body = ratfunc_str(c)
    if c.is_poly():
        if not _is_atomic(c.num) and not _is_monomial(c):
            body = f"({body})"
    else:
        body = f"({body})"
    return f"{body}*{mono}"


def _is_monomial(c: RatFunc) -> bool:
    return sum(1 for a in c.num.c if a) == 1


def _negative(c: RatFunc) -> bool:
    return c.num.lc < 0


def format_op(l) -> str:
    if not l.coeffs:
        return "0"
    parts = []
    for i in range(len(l.coeffs) - 1, -1, -1):
        c = l.coeffs[i]
        if not c:
            continue
        neg = _negative(c)
        body = _coeff_times(-c if neg else c, _dpow(i))
        if neg and i == 0 and c.is_poly() and not _is_atomic(c.num) and not _is_monomial(c):
            body = f"({body})"  # a bare sum after a minus sign would read back wrong
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


def format_matrix(a) -> str:
    return "[" + ", ".join("[" + ", ".join(ratfunc_str(v) for v in row) + "]" for row in a) + "]"


__all__ = ["format_op", "format_matrix", "frac_str", "poly_str", "ratfunc_str"]
