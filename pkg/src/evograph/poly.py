"""Sparse polynomials of degree <= 2 over the rationals.

A monomial is a sorted tuple of variable indices: () is the constant
monomial, (v,) linear, (v, w) quadratic (v == w for squares).  A
polynomial maps monomials to nonzero Fraction coefficients.  Affine
substitution keeps the degree bound, so the whole constraint pipeline
stays inside this representation.
"""

from __future__ import annotations

from fractions import Fraction

Mono = tuple[int, ...]
Poly = dict[Mono, Fraction]

CONST: Mono = ()


def mono_key(m: Mono):
    """Total order used for pivoting: quadratics, then linear, then constant."""
    return (-len(m), m)


def leading_mono(p: Poly) -> Mono:
    return min(p, key=mono_key)


def poly_from_terms(terms) -> Poly:
    out: Poly = {}
    for coeff, mono in terms:
        mono = tuple(sorted(mono))
        c = out.get(mono, Fraction(0)) + coeff
        if c:
            out[mono] = c
        elif mono in out:
            del out[mono]
    return out


def add_scaled(p: Poly, q: Poly, lam: Fraction) -> Poly:
    """p + lam * q as a fresh dict."""
    out = dict(p)
    for m, c in q.items():
        v = out.get(m, Fraction(0)) + lam * c
        if v:
            out[m] = v
        elif m in out:
            del out[m]
    return out


def scale(p: Poly, lam: Fraction) -> Poly:
    if lam == 0:
        return {}
    return {m: lam * c for m, c in p.items()}


def poly_vars(p: Poly) -> set[int]:
    return {v for m in p for v in m}


def degree_of_var(p: Poly, v: int) -> int:
    d = 0
    for m in p:
        d = max(d, m.count(v))
    return d


def substitute_var(p: Poly, v: int, repl: Poly) -> Poly:
    """Replace variable v by an affine polynomial (degree <= 1).

    Quadratic monomials touching v expand via products of the
    replacement, so the result stays degree <= 2.
    """
    if any(len(m) > 1 for m in repl):
        raise ValueError("replacement must be affine")
    out: Poly = {}

    def emit(mono: Mono, coeff: Fraction):
        c = out.get(mono, Fraction(0)) + coeff
        if c:
            out[mono] = c
        elif mono in out:
            del out[mono]

    for m, c in p.items():
        cnt = m.count(v)
        if cnt == 0:
            emit(m, c)
        elif len(m) == 1:  # (v,)
            for rm, rc in repl.items():
                emit(rm, c * rc)
        elif cnt == 1:  # (v, w)
            w = m[0] if m[1] == v else m[1]
            for rm, rc in repl.items():
                emit(tuple(sorted(rm + (w,))), c * rc)
        else:  # (v, v)
            items = list(repl.items())
            for i, (ma, ca) in enumerate(items):
                for mb, cb in items:
                    emit(tuple(sorted(ma + mb)), c * ca * cb)
    return out


def evaluate(p: Poly, value_of) -> object:
    """Evaluate with value_of(var) -> scalar; scalar ring must close under +,*.

    The constant term uses scalar multiplication by 1 of the coefficient,
    so Fractions, floats and RadicalSums all work.
    """
    total = None
    for m, c in p.items():
        term = c
        for v in m:
            term = value_of(v) * term
        total = term if total is None else total + term
    return total if total is not None else Fraction(0)


def to_string(p: Poly, var_name) -> str:
    if not p:
        return "0"
    bits = []
    for m in sorted(p, key=mono_key):
        c = p[m]
        if not m:
            bits.append(str(c))
        else:
            mono = "*".join(var_name(v) for v in m)
            bits.append(f"{c}*{mono}" if c != 1 else mono)
    return " + ".join(bits)
