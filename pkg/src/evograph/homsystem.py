"""The quadratic constraint system satisfied by algebra homomorphisms.

A linear map f from the random-walk algebra of G to the adjacency
algebra of G, written f(e_i) = sum_k t_ik e_k, is an algebra
homomorphism iff the unknowns t_ik satisfy, for every vertex r:

  * product constraints, one per pair i < j:
        sum_{k in N(r)} t_ik * t_jk = 0
  * square constraints, one per vertex i:
        sum_{k in N(r)} t_ik**2  -  (1/deg(i)) * sum_{l in N(i)} t_lr = 0

The generator below emits exactly this system; the independent oracle
``is_homomorphism_direct`` instead expands f(e_i e_j) = f(e_i) f(e_j)
through the algebra module and never looks at the constraints, which is
what ties the two routes together in the test suite.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from . import poly
from .algebra import DimensionMismatch, build_adjacency_algebra, build_rw_algebra, multiply, Element
from .exact import rank
from .graphs import Graph
from .radicals import RadicalSum


@dataclass(frozen=True)
class Constraint:
    tag: str          # "prodzero:r:i:j" or "square:i:r"
    p: poly.Poly


@dataclass(frozen=True)
class HomSystem:
    graph: Graph
    n: int
    constraints: tuple[Constraint, ...]

    def var(self, i: int, k: int) -> int:
        """Flatten 1-indexed coefficient position (i,k) to a variable index."""
        return (i - 1) * self.n + (k - 1)

    def var_pair(self, v: int) -> tuple[int, int]:
        return v // self.n + 1, v % self.n + 1

    def var_name(self, v: int) -> str:
        i, k = self.var_pair(v)
        return f"t_{i}_{k}"

    @property
    def num_vars(self) -> int:
        return self.n * self.n


@dataclass(frozen=True)
class HomCandidate:
    """An n x n coefficient matrix; entries may be Fraction, float or RadicalSum."""

    entries: tuple[tuple, ...]

    @staticmethod
    def from_rows(rows) -> "HomCandidate":
        return HomCandidate(tuple(tuple(r) for r in rows))

    @staticmethod
    def zero(n: int) -> "HomCandidate":
        return HomCandidate(tuple(tuple(Fraction(0) for _ in range(n)) for _ in range(n)))

    @staticmethod
    def scaled_identity(n: int, c) -> "HomCandidate":
        return HomCandidate(
            tuple(tuple(c if i == k else Fraction(0) for k in range(n)) for i in range(n))
        )

    @property
    def n(self) -> int:
        return len(self.entries)

    def entry(self, i: int, k: int):
        return self.entries[i - 1][k - 1]

    def max_abs(self) -> float:
        return max((abs(float(x)) for row in self.entries for x in row), default=0.0)

    def is_rational(self) -> bool:
        return all(isinstance(x, (int, Fraction)) for row in self.entries for x in row)


def derive_constraints(g: Graph) -> HomSystem:
    """Emit the full constraint system in deterministic order.

    Ordering is r-major: for each r first the product constraints over
    pairs (i, j) with i < j, then all square constraints follow, again
    r-major.  Total count is n * n(n-1)/2 + n**2.
    """
    n = g.n
    var = lambda i, k: (i - 1) * n + (k - 1)
    out: list[Constraint] = []
    for r in g.vertices():
        nbrs = sorted(g.neighbors(r))
        for i in g.vertices():
            for j in range(i + 1, n + 1):
                terms = [(Fraction(1), (var(i, k), var(j, k))) for k in nbrs]
                out.append(Constraint(f"prodzero:{r}:{i}:{j}", poly.poly_from_terms(terms)))
    for r in g.vertices():
        nbrs = sorted(g.neighbors(r))
        for i in g.vertices():
            terms = [(Fraction(1), (var(i, k), var(i, k))) for k in nbrs]
            if g.degree(i):  # empty neighbourhood only for the 1-vertex graph
                d = Fraction(1, g.degree(i))
                terms += [(-d, (var(l, r),)) for l in sorted(g.neighbors(i))]
            out.append(Constraint(f"square:{i}:{r}", poly.poly_from_terms(terms)))
    return HomSystem(g, n, tuple(out))


@dataclass(frozen=True)
class ResidualReport:
    values: tuple
    max_norm: float

    def is_exact_zero(self) -> bool:
        return all(_is_zero_scalar(v) for v in self.values)


def _is_zero_scalar(v) -> bool:
    if isinstance(v, RadicalSum):
        return v.is_zero
    return v == 0


def residual(sys: HomSystem, T: HomCandidate) -> ResidualReport:
    """Per-constraint evaluation of the candidate; exact for exact entries."""
    if T.n != sys.n:
        raise DimensionMismatch(f"candidate is {T.n}x{T.n}, system has n={sys.n}")
    flat = [x for row in T.entries for x in row]
    coerce = any(isinstance(x, RadicalSum) for x in flat)
    if coerce:
        flat = [x if isinstance(x, RadicalSum) else RadicalSum.from_rational(x) for x in flat]
    values = tuple(poly.evaluate(c.p, flat.__getitem__) for c in sys.constraints)
    norm = max((abs(float(v)) for v in values), default=0.0)
    return ResidualReport(values, norm)


def _apply_candidate(T: HomCandidate, z: Element, zero) -> Element:
    """Image of an element under the linear map with coefficient matrix T."""
    n = T.n
    acc = [zero] * n
    for i in range(n):
        zi = z.coeffs[i]
        if _is_zero_scalar(zi):
            continue
        for k in range(n):
            e = T.entries[i][k]
            if not _is_zero_scalar(e):
                acc[k] = acc[k] + e * zi
    return Element(tuple(acc))


def is_homomorphism_direct(g: Graph, T: HomCandidate) -> bool:
    """Brute-force oracle: check f(e_i e_j) = f(e_i) f(e_j) for all pairs.

    Products on the left are taken in the random-walk algebra, on the
    right in the adjacency algebra; both expansions go through the
    algebra module, independently of the derived constraint system.
    """
    if T.n != g.n:
        raise DimensionMismatch(f"candidate is {T.n}x{T.n}, graph has n={g.n}")
    dom = build_rw_algebra(g)
    cod = build_adjacency_algebra(g)
    radical = any(isinstance(x, RadicalSum) for row in T.entries for x in row)
    zero = RadicalSum() if radical else Fraction(0)
    images = [Element(tuple(T.entries[i])) for i in range(g.n)]
    for i in g.vertices():
        for j in range(i, g.n + 1):
            lhs_dom = multiply(dom, dom.basis_element(i), dom.basis_element(j))
            lhs = _apply_candidate(T, lhs_dom, zero)
            rhs = multiply(cod, images[i - 1], images[j - 1])
            diff = lhs + rhs.scale(Fraction(-1))
            if not diff.is_zero():
                return False
    return True


def is_isomorphism(g: Graph, T: HomCandidate) -> bool:
    """Homomorphism (by the direct oracle) with full exact rank."""
    if not is_homomorphism_direct(g, T):
        return False
    if T.is_rational():
        mat = [[Fraction(x) for x in row] for row in T.entries]
        return rank(mat) == g.n
    return _rank_radical(T) == g.n


def _rank_radical(T: HomCandidate) -> int:
    """Exact rank for matrices over radical sums.

    Elimination divides only by single-term pivots (those have exact
    inverses); every candidate produced by the closed-form constructions
    is diagonal, so a suitable pivot always exists there.
    """
    n = T.n
    m = [[_coerce_radical(x) for x in row] for row in T.entries]
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, n):
            if not m[i][c].is_zero and m[i][c].is_single_term():
                piv = i
                break
        if piv is None:
            if any(not m[i][c].is_zero for i in range(r, n)):
                raise ValueError("cannot pick an invertible radical pivot")
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = RadicalSum.from_radical(m[r][c].as_radical().inverse())
        m[r] = [x * inv for x in m[r]]
        for i in range(n):
            if i != r and not m[i][c].is_zero:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
    return r


def _coerce_radical(x) -> RadicalSum:
    return x if isinstance(x, RadicalSum) else RadicalSum.from_rational(x)


def dump_system(sys: HomSystem) -> str:
    """JSON dump of variables and constraints with exact coefficients."""
    payload = {
        "n": sys.n,
        "variables": [sys.var_name(v) for v in range(sys.num_vars)],
        "constraints": [
            {
                "tag": c.tag,
                "terms": [
                    {"coeff": str(coeff), "monomial": [sys.var_name(v) for v in mono]}
                    for mono, coeff in sorted(c.p.items(), key=lambda kv: poly.mono_key(kv[0]))
                ],
            }
            for c in sys.constraints
        ],
    }
    return json.dumps(payload, indent=2)
