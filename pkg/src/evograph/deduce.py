"""Sound symbolic deduction over the homomorphism constraint system.

The engine maintains, per branch of a case-split tree, a store of
polynomial constraint rows kept in reduced row-echelon form over the
monomial space, together with facts (zero variables, exact values,
mutex groups, nonzero assumptions).  Saturation interleaves

  * substitution of known facts into rows,
  * exact linear combination of rows sharing monomials (Gaussian
    elimination over the monomial coordinates),
  * affine elimination: a fully reduced linear row defines its leading
    variable and is substituted into quadratic occurrences elsewhere,
  * real-field sign rules (a same-sign sum of squares forces each
    summand to vanish; a same-sign constant on top is a contradiction),
  * mutex reasoning on leaf-anchor columns and product rows,
  * exact solving of square cycles x^2 = k*y, y^2 = m*x under a
    nonzero assumption (real cube roots are unique, so no sign split),

until a fixpoint.  Case splitting (x = 0 versus x != 0) closes a branch
on an outright contradiction or when some column is entirely zero, in
which case connectivity forces the null map.  Every derivation is
logged; the replayer in prooflog.py re-validates logs independently.

Soundness is the contract: a "null-only" verdict is issued only when
every branch of an exhaustive split closes.  Budget exhaustion and
unresolved branches surface as "unknown", never as a wrong verdict.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from . import poly
from .graphs import Graph
from .homsystem import HomCandidate, HomSystem, derive_constraints, is_homomorphism_direct
from .prooflog import FOUND_STRUCTURE, NULL_ONLY, UNKNOWN, ProofLog, Ref, Step
from .radicals import Radical, RadicalSum


@dataclass(frozen=True)
class Budget:
    max_depth: int = 8
    max_steps: int = 1_000_000


@dataclass(frozen=True)
class Verdict:
    kind: str  # NULL_ONLY | UNKNOWN | FOUND_STRUCTURE
    log: ProofLog
    open_branches: int = 0
    reason: str = ""
    witness: HomCandidate | None = None

    @property
    def is_null_only(self) -> bool:
        return self.kind == NULL_ONLY


class BudgetExhausted(Exception):
    pass


class _Shared:
    """Log and step counter shared across all branches."""

    def __init__(self, sys: HomSystem, budget: Budget):
        self.sys = sys
        self.budget = budget
        self.log = ProofLog()
        self.next_sid = 0
        self.open_leaves: list["DeductionState"] = []
        self.exhausted = False
        self.depth_cut = False


class DeductionState:
    """Per-branch constraint store and fact set (copy-on-branch)."""

    def __init__(self, shared: _Shared, branch: tuple = ()):
        self.shared = shared
        self.branch = branch
        self.rows: dict[Ref, poly.Poly] = {}
        self.basis: dict[poly.Mono, Ref] = {}
        self.zeros: dict[int, Ref] = {}
        self.values: dict[int, tuple[Radical, Ref]] = {}
        self.nonzero: dict[int, Ref] = {}
        self.mutex_groups: list[tuple[frozenset, Ref]] = []
        self.pair_mutex: dict[frozenset, Ref] = {}
        self.pending: deque = deque()
        self.dirty: set[int] = set()
        self.contradiction: Ref | None = None

    @property
    def sys(self) -> HomSystem:
        return self.shared.sys

    def clone(self) -> "DeductionState":
        c = DeductionState(self.shared, self.branch)
        c.rows = dict(self.rows)
        c.basis = dict(self.basis)
        c.zeros = dict(self.zeros)
        c.values = dict(self.values)
        c.nonzero = dict(self.nonzero)
        c.mutex_groups = list(self.mutex_groups)
        c.pair_mutex = dict(self.pair_mutex)
        c.pending = deque(self.pending)
        c.dirty = set(self.dirty)
        c.contradiction = self.contradiction
        return c

    # -- logging --------------------------------------------------------------

    def emit(self, rule: str, premises, conclusion, payload=None) -> Ref:
        sh = self.shared
        if sh.next_sid >= sh.budget.max_steps:
            sh.exhausted = True
            raise BudgetExhausted()
        step = Step(
            sid=sh.next_sid,
            rule=rule,
            branch=self.branch,
            premises=tuple(premises),
            conclusion=conclusion,
            payload=payload or {},
        )
        sh.next_sid += 1
        return sh.log.append(step)

    # -- fact registration ------------------------------------------------------

    def add_zero(self, v: int, ref: Ref):
        if self.contradiction or v in self.zeros:
            return
        self.zeros[v] = ref
        if v in self.nonzero:
            cref = self.emit(
                "value-conflict",
                [ref, self.nonzero[v]],
                ("contradiction",),
                {"mode": "zero-nonzero"},
            )
            self.contradiction = cref
            return
        if v in self.values and not self.values[v][0].is_zero:
            cref = self.emit(
                "value-conflict",
                [ref, self.values[v][1]],
                ("contradiction",),
                {"mode": "zero-nonzero"},
            )
            self.contradiction = cref
            return
        self.dirty.add(v)

    def add_value(self, v: int, rad: Radical, ref: Ref):
        if self.contradiction:
            return
        if rad.is_zero:
            self.add_zero(v, ref)
            return
        if v in self.zeros:
            cref = self.emit(
                "value-conflict",
                [self.zeros[v], ref],
                ("contradiction",),
                {"mode": "zero-nonzero"},
            )
            self.contradiction = cref
            return
        if v in self.values:
            old, oref = self.values[v]
            if old != rad:
                cref = self.emit(
                    "value-conflict", [oref, ref], ("contradiction",), {"mode": "two-values"}
                )
                self.contradiction = cref
            return
        self.values[v] = (rad, ref)
        if rad.is_rational:
            self.dirty.add(v)

    # -- row pipeline -----------------------------------------------------------

    def enqueue(self, ref: Ref, p: poly.Poly):
        self.pending.append((ref, p))

    def _substitute_facts(self, ref: Ref, p: poly.Poly):
        """One logged substitution per determined variable occurring in p."""
        while True:
            target = next(
                (
                    v
                    for v in sorted(poly.poly_vars(p))
                    if v in self.zeros
                    or (v in self.values and self.values[v][0].is_rational)
                ),
                None,
            )
            if target is None:
                return ref, p
            if target in self.zeros:
                dref = self.zeros[target]
                repl: poly.Poly = {}
            else:
                rad, dref = self.values[target]
                c = rad.as_rational()
                repl = {poly.CONST: c} if c else {}
            p = poly.substitute_var(p, target, repl)
            ref = self.emit(
                "substitute",
                [ref, dref],
                ("row", p),
                {"op": "subst", "src": ref, "var": target, "def": dref},
            )

    def _reduce(self, ref: Ref, p: poly.Poly):
        """Full reduction against the basis; one lincomb step if it changed."""
        parts = [(ref, Fraction(1))]
        cur = dict(p)
        changed = True
        while changed:
            changed = False
            for m in sorted(cur, key=poly.mono_key):
                hit = self.basis.get(m)
                if hit is not None and hit != ref:
                    lam = -cur[m] / self.rows[hit][m]
                    cur = poly.add_scaled(cur, self.rows[hit], lam)
                    parts.append((hit, lam))
                    changed = True
                    break
        if len(parts) == 1:
            return ref, cur
        if not cur:
            return None, cur
        nref = self.emit(
            "substitute", [r for r, _ in parts], ("row", cur), {"op": "lincomb", "parts": parts}
        )
        return nref, cur

    def _affine_substitute(self, ref: Ref, p: poly.Poly, v: int, dref: Ref, dpoly: poly.Poly):
        c = dpoly[(v,)]
        repl = {m: -cc / c for m, cc in dpoly.items() if m != (v,)}
        np = poly.substitute_var(p, v, repl)
        nref = self.emit(
            "substitute",
            [ref, dref],
            ("row", np),
            {"op": "subst", "src": ref, "var": v, "def": dref},
        )
        return nref, np

    def _remove_row(self, ref: Ref):
        p = self.rows.pop(ref, None)
        if p is None:
            return None
        lead = poly.leading_mono(p)
        if self.basis.get(lead) == ref:
            del self.basis[lead]
        return p

    def process_pending(self) -> bool:
        worked = False
        while self.pending and not self.contradiction:
            ref, p = self.pending.popleft()
            worked = True
            self._pipeline(ref, p)
        return worked

    def _pipeline(self, ref: Ref, p: poly.Poly):
        ref, p = self._substitute_facts(ref, p)
        # quadratic occurrences of affine-determined variables
        while not self.contradiction:
            quad_vars = sorted(
                {
                    v
                    for m in p
                    if len(m) == 2
                    for v in m
                    if (v,) in self.basis
                }
            )
            if not quad_vars:
                break
            v = quad_vars[0]
            dref = self.basis[(v,)]
            ref, p = self._affine_substitute(ref, p, v, dref, self.rows[dref])
            ref, p = self._substitute_facts(ref, p)
        if self.contradiction:
            return
        res = self._reduce(ref, p)
        if res[0] is None:
            return
        ref, p = res
        if not p:
            return
        if set(p) == {poly.CONST}:
            self.contradiction = self.emit(
                "value-conflict", [ref], ("contradiction",), {"mode": "eval"}
            )
            return
        self._shape_rules(ref, p)
        if self.contradiction:
            return
        self._insert(ref, p)

    def _insert(self, ref: Ref, p: poly.Poly):
        lead = poly.leading_mono(p)
        # back-substitute the new pivot out of existing rows
        holders = sorted(r for r, q in self.rows.items() if lead in q)
        for r in holders:
            q = self._remove_row(r)
            lam = -q[lead] / p[lead]
            nq = poly.add_scaled(q, p, lam)
            if not nq:
                continue
            nref = self.emit(
                "substitute",
                [r, ref],
                ("row", nq),
                {"op": "lincomb", "parts": [(r, Fraction(1)), (ref, lam)]},
            )
            if set(nq) == {poly.CONST}:
                self.contradiction = self.emit(
                    "value-conflict", [nref], ("contradiction",), {"mode": "eval"}
                )
                return
            self.rows[nref] = nq
            self.basis[poly.leading_mono(nq)] = nref
            self._shape_rules(nref, nq)
            if self.contradiction:
                return
        self.rows[ref] = p
        self.basis[lead] = ref
        if len(lead) == 1:
            # new affine definition: rewrite quadratic occurrences elsewhere
            v = lead[0]
            for r in sorted(self.rows):
                if r == ref:
                    continue
                q = self.rows[r]
                if any(len(m) == 2 and v in m for m in q):
                    self._remove_row(r)
                    self.enqueue(r, q)

    # -- single-row shape rules ---------------------------------------------------

    def _shape_rules(self, ref: Ref, p: poly.Poly):
        monos = set(p)
        if len(p) == 1:
            m = next(iter(monos))
            if len(m) == 1 or (len(m) == 2 and m[0] == m[1]):
                zref = self.emit("single-monomial-zero", [ref], ("zero", m[0]))
                self.add_zero(m[0], zref)
            elif len(m) == 2:
                self.pair_mutex.setdefault(frozenset(m), ref)
            return
        nconst = [m for m in monos if m != poly.CONST]
        if all(len(m) == 2 and m[0] == m[1] for m in nconst):
            signs = {p[m] > 0 for m in nconst}
            if len(signs) == 1:
                cst = p.get(poly.CONST)
                if cst is None:
                    for m in sorted(nconst):
                        zref = self.emit("square-sum-zero", [ref], ("zero", m[0]))
                        self.add_zero(m[0], zref)
                        if self.contradiction:
                            return
                elif (cst > 0) == signs.pop():
                    self.contradiction = self.emit(
                        "negative-square", [ref], ("contradiction",)
                    )
            return
        # univariate quadratic with negative discriminant
        pvars = poly.poly_vars(p)
        if len(pvars) == 1 and poly.CONST in monos:
            v = next(iter(pvars))
            a = p.get((v, v), Fraction(0))
            b = p.get((v,), Fraction(0))
            c = p[poly.CONST]
            if a and b * b - 4 * a * c < 0:
                self.contradiction = self.emit(
                    "negative-square", [ref], ("contradiction",), {"mode": "discriminant"}
                )

    # -- multi-row scans ------------------------------------------------------------

    def _nonzero_closure(self) -> dict[int, list[Ref]]:
        chains: dict[int, list[Ref]] = {}
        for v, ref in sorted(self.nonzero.items()):
            chains[v] = [ref]
        for v, (rad, ref) in sorted(self.values.items()):
            if not rad.is_zero:
                chains.setdefault(v, [ref])
        for ref in sorted(self.rows):
            p = self.rows[ref]
            if len(p) == 2 and poly.CONST in p:
                sq = [m for m in p if len(m) == 2 and m[0] == m[1]]
                if len(sq) == 1 and -p[poly.CONST] / p[sq[0]] > 0:
                    chains.setdefault(sq[0][0], [ref])
        links = []
        for ref in sorted(self.rows):
            shape = _two_univariate(self.rows[ref])
            if shape:
                links.append((ref, shape))
        changed = True
        while changed:
            changed = False
            for ref, (x, y) in links:
                if x in chains and y not in chains:
                    chains[y] = [ref] + chains[x]
                    changed = True
                if y in chains and x not in chains:
                    chains[x] = [ref] + chains[y]
                    changed = True
        return chains

    def run_scans(self) -> bool:
        before = self.shared.next_sid
        chains = self._nonzero_closure()
        self._scan_mutex(chains)
        if not self.contradiction:
            self._scan_square_cycles(chains)
        if not self.contradiction:
            self._scan_radical_rows()
        return self.shared.next_sid > before or bool(self.pending) or bool(self.dirty)

    def _mutex_pairs_all(self):
        pairs = dict(self.pair_mutex)
        for group, ref in self.mutex_groups:
            vs = sorted(group)
            for i, a in enumerate(vs):
                for b in vs[i + 1:]:
                    pairs.setdefault(frozenset((a, b)), ref)
        return pairs

    def _scan_mutex(self, chains):
        pairs = self._mutex_pairs_all()
        for key in sorted(pairs, key=sorted):
            if self.contradiction:
                return
            mref = pairs[key]
            x, y = sorted(key)
            for a, b in ((x, y), (y, x)):
                if a in chains and b not in self.zeros:
                    zref = self.emit(
                        "mutex-elim",
                        [mref] + chains[a],
                        ("zero", b),
                        {"mode": "nonzero", "var": a},
                    )
                    self.add_zero(b, zref)
        # pair shapes: a linking two-monomial row zeroes both members
        links = [(r, _two_univariate(self.rows[r])) for r in sorted(self.rows)]
        for ref, shape in links:
            if self.contradiction:
                return
            if not shape:
                continue
            x, y = shape
            mref = pairs.get(frozenset((x, y)))
            if mref is None or ref == mref:
                continue
            for v in sorted((x, y)):
                if v not in self.zeros:
                    zref = self.emit(
                        "mutex-elim", [mref, ref], ("zero", v), {"mode": "pair"}
                    )
                    self.add_zero(v, zref)
                    if self.contradiction:
                        return

    def _scan_square_cycles(self, chains):
        # single rows a*x^2 + b*x with x known nonzero
        for ref in sorted(self.rows):
            if self.contradiction:
                return
            p = self.rows[ref]
            pv = poly.poly_vars(p)
            if len(pv) == 1 and len(p) == 2:
                v = next(iter(pv))
                if set(p) == {(v, v), (v,)} and v in chains and v not in self.values:
                    val = Radical.from_rational(-p[(v,)] / p[(v, v)])
                    vref = self.emit(
                        "quad-solve-nonzero",
                        [ref] + chains[v],
                        ("value", v, val),
                        {"mode": "single", "var": v},
                    )
                    self.add_value(v, val, vref)
        # cycles x^2 = kappa*y, y^2 = mu*x
        shapes = {}
        for ref in sorted(self.rows):
            s = _square_link(self.rows[ref])
            if s:
                x, y, kappa = s
                shapes.setdefault((x, y), (ref, kappa))
        for (x, y), (r1, kappa) in sorted(shapes.items()):
            if self.contradiction:
                return
            if x == y or (y, x) not in shapes:
                continue
            r2, mu = shapes[(y, x)]
            witness = x if x in chains else (y if y in chains else None)
            if witness is None:
                continue
            if x not in self.values:
                val = Radical.root(kappa * kappa * mu, 3)
                vref = self.emit(
                    "quad-solve-nonzero",
                    [r1, r2] + chains[witness],
                    ("value", x, val),
                    {"mode": "pair", "var": x, "witness": witness},
                )
                self.add_value(x, val, vref)
                if self.contradiction:
                    return
            if y not in self.values:
                # from y's side the cycle reads y^2 = mu*x, x^2 = kappa*y
                val = Radical.root(kappa * mu * mu, 3)
                vref = self.emit(
                    "quad-solve-nonzero",
                    [r2, r1] + chains[witness],
                    ("value", y, val),
                    {"mode": "pair", "var": y, "witness": witness},
                )
                self.add_value(y, val, vref)

    def _scan_radical_rows(self):
        """Rows whose variables are (almost) all pinned to radical values."""
        for ref in sorted(self.rows):
            if self.contradiction:
                return
            p = self.rows[ref]
            unknown = [v for v in sorted(poly.poly_vars(p)) if v not in self.values]
            valued = [v for v in sorted(poly.poly_vars(p)) if v in self.values]
            if not valued and len(unknown) > 1:
                continue
            vrefs = [self.values[v][1] for v in valued]
            rest, const = _eval_partial(p, {v: self.values[v][0] for v in valued})
            if not unknown:
                if rest:
                    continue
                if not const.is_zero:
                    self.contradiction = self.emit(
                        "value-conflict", [ref] + vrefs, ("contradiction",), {"mode": "eval"}
                    )
                else:
                    self._remove_row(ref)
                continue
            if len(unknown) != 1:
                continue
            x = unknown[0]
            if set(rest) == {(x,)}:
                if not const.is_single_term():
                    continue
                val = (-const).as_radical() / Radical.from_rational(rest[(x,)])
                concl = ("zero", x) if val.is_zero else ("value", x, val)
                vref = self.emit("linear-solve", [ref] + vrefs, concl)
                if val.is_zero:
                    self.add_zero(x, vref)
                else:
                    self.add_value(x, val, vref)
            elif set(rest) == {(x, x)} and const.is_zero:
                vref = self.emit("linear-solve", [ref] + vrefs, ("zero", x))
                self.add_zero(x, vref)
            elif set(rest) == {(x, x)} and const.is_single_term():
                want = (-const).as_radical() / Radical.from_rational(rest[(x, x)])
                if want.coeff < 0:
                    self.contradiction = self.emit(
                        "negative-square", [ref] + vrefs, ("contradiction",)
                    )

    # -- dirty-variable rewrites -----------------------------------------------------

    def flush_dirty(self) -> bool:
        if not self.dirty or self.contradiction:
            return False
        dirty, self.dirty = self.dirty, set()
        affected = sorted(
            r for r, p in self.rows.items() if poly.poly_vars(p) & dirty
        )
        for r in affected:
            p = self._remove_row(r)
            if p is not None:
                self.enqueue(r, p)
        return bool(affected)


def _two_univariate(p: poly.Poly):
    if len(p) != 2:
        return None
    vs = []
    for m in p:
        s = set(m)
        if len(s) != 1:
            return None
        vs.append(s.pop())
    if vs[0] == vs[1]:
        return None
    return tuple(sorted(vs))


def _square_link(p: poly.Poly):
    if len(p) != 2:
        return None
    sq = [m for m in p if len(m) == 2 and m[0] == m[1]]
    lin = [m for m in p if len(m) == 1]
    if len(sq) != 1 or len(lin) != 1:
        return None
    return sq[0][0], lin[0][0], -p[lin[0]] / p[sq[0]]


def _eval_partial(p: poly.Poly, vals: dict[int, Radical]):
    rest: poly.Poly = {}
    const = RadicalSum()
    for m, c in p.items():
        if all(v in vals for v in m):
            term = RadicalSum.from_rational(c)
            for v in m:
                term = term * RadicalSum.from_radical(vals[v])
            const = const + term
        else:
            rest[m] = c
    return rest, const


# -- public operations ------------------------------------------------------------


def apply_leaf_rules(g: Graph, state: DeductionState) -> list[Ref]:
    """Column mutexes for leaf anchors; zeros for twin leaf pairs."""
    sys = state.sys
    out: list[Ref] = []
    anchors_done = set()
    for leaf in sorted(g.leaves()):
        anchor = next(iter(g.neighbors(leaf)))
        if anchor not in anchors_done:
            anchors_done.add(anchor)
            col = tuple(sys.var(i, anchor) for i in g.vertices())
            mref = state.emit("leaf-mutex", [], ("mutex", col))
            state.mutex_groups.append((frozenset(col), mref))
            out.append(mref)
        for twin in sorted(g.leaves()):
            if twin != leaf and g.neighbors(twin) == g.neighbors(leaf):
                for (i, k) in ((twin, anchor), (leaf, anchor), (anchor, leaf), (anchor, twin)):
                    v = sys.var(i, k)
                    if v not in state.zeros:
                        zref = state.emit("leaf-twin-zero", [], ("zero", v))
                        state.add_zero(v, zref)
                        out.append(zref)
    return out


def apply_leaf_twin_cross_rules(g: Graph, state: DeductionState) -> list[Ref]:
    """Relations between a twin pair of leaves and any third leaf."""
    sys = state.sys
    out: list[Ref] = []
    leaves = sorted(g.leaves())
    pairs = [
        (l, u)
        for i, l in enumerate(leaves)
        for u in leaves[i + 1:]
        if g.neighbors(l) == g.neighbors(u)
    ]
    for l, u in pairs:
        kl = next(iter(g.neighbors(l)))
        for w in leaves:
            if w in (l, u):
                continue
            kw = next(iter(g.neighbors(w)))
            for (i, k) in ((u, kw), (l, kw), (kl, w)):
                v = sys.var(i, k)
                if v not in state.zeros:
                    zref = state.emit("leaf-twin-cross", [], ("zero", v))
                    state.add_zero(v, zref)
                    out.append(zref)
            one = Fraction(1)
            rows = [
                poly.poly_from_terms(
                    [(one, (sys.var(kw, l),)), (-one, (sys.var(kw, u),))]
                ),
                poly.poly_from_terms(
                    [(one, (sys.var(w, kl), sys.var(w, kl))), (-one, (sys.var(kw, l),))]
                ),
                poly.poly_from_terms(
                    [(one, (sys.var(w, kl), sys.var(w, kl))), (-one, (sys.var(kw, u),))]
                ),
            ]
            for p in rows:
                rref = state.emit("leaf-twin-cross", [], ("row", p))
                state.enqueue(rref, p)
                out.append(rref)
    return out


def saturate(sys: HomSystem, state: DeductionState) -> DeductionState:
    """Run the rewriting and scanning loop to a fixpoint (or contradiction)."""
    while not state.contradiction:
        if state.process_pending():
            continue
        if state.flush_dirty():
            continue
        if not state.run_scans():
            break
    return state


def _zero_column(state: DeductionState) -> int | None:
    sys = state.sys
    for k in range(1, sys.n + 1):
        if all(sys.var(i, k) in state.zeros for i in range(1, sys.n + 1)):
            return k
    return None


def _pick_branch_var(state: DeductionState) -> int | None:
    counts: dict[int, int] = {}
    for p in state.rows.values():
        for v in poly.poly_vars(p):
            if (
                v not in state.zeros
                and v not in state.values
                and v not in state.nonzero
                and (v,) not in state.basis
            ):
                counts[v] = counts.get(v, 0) + 1
    if not counts:
        return None
    best = max(counts.values())
    return min(v for v, c in counts.items() if c == best)


def _close_contradiction(state: DeductionState):
    state.emit("branch-close", [state.contradiction], ("closed", "contradiction"))


def _try_close_null(state: DeductionState) -> bool:
    k = _zero_column(state)
    if k is None:
        return False
    sys = state.sys
    prem = [state.zeros[sys.var(i, k)] for i in range(1, sys.n + 1)]
    nref = state.emit("column-zero-propagate", prem, ("null-map",), {"column": k})
    state.emit("branch-close", [nref], ("closed", "null"))
    return True


def _explore(state: DeductionState, depth: int) -> bool:
    saturate(state.sys, state)
    if state.contradiction:
        _close_contradiction(state)
        return True
    if _try_close_null(state):
        return True
    v = _pick_branch_var(state)
    if v is None:
        state.shared.open_leaves.append(state)
        return False
    if depth >= state.shared.budget.max_depth:
        state.shared.depth_cut = True
        state.shared.open_leaves.append(state)
        return False
    closed = True
    for nz in (False, True):
        child = state.clone()
        child.branch = state.branch + ((v, nz),)
        aref = child.emit("branch-open", [], ("assume", v, nz))
        if nz:
            child.nonzero[v] = aref
        else:
            child.add_zero(v, aref)
        if not _explore(child, depth + 1):
            closed = False
    return closed


def prove_null_only(g: Graph, budget: Budget = Budget()) -> Verdict:
    """Certify that the null map is the only homomorphism, when provable.

    Returns a verdict carrying the proof log.  "null-only" is issued only
    when an exhaustive case split closes every branch; anything else
    (budget, unresolved branches, or an explicit nonzero solution) comes
    back as "unknown" or "found-structure".
    """
    sys = derive_constraints(g)
    shared = _Shared(sys, budget)
    root = DeductionState(shared)
    try:
        apply_leaf_rules(g, root)
        apply_leaf_twin_cross_rules(g, root)
        for idx in range(len(sys.constraints)):
            root.enqueue(("c", idx), sys.constraints[idx].p)
        closed = _explore(root, 0)
    except BudgetExhausted:
        shared.log.verdict = UNKNOWN
        return Verdict(UNKNOWN, shared.log, open_branches=1, reason="budget-exhausted")
    if closed:
        shared.log.verdict = NULL_ONLY
        return Verdict(NULL_ONLY, shared.log)
    witness = _extract_witness(g, shared)
    if witness is not None:
        shared.log.verdict = FOUND_STRUCTURE
        return Verdict(
            FOUND_STRUCTURE,
            shared.log,
            open_branches=len(shared.open_leaves),
            reason="consistent nonzero assignment",
            witness=witness,
        )
    shared.log.verdict = UNKNOWN
    reason = "budget-exhausted" if shared.depth_cut else "open branches at fixpoint"
    return Verdict(
        UNKNOWN,
        shared.log,
        open_branches=len(shared.open_leaves),
        reason=reason,
    )


def _extract_witness(g: Graph, shared: _Shared) -> HomCandidate | None:
    """A fully valued open leaf with no live rows is a candidate solution."""
    n = shared.sys.n
    for leaf in shared.open_leaves:
        if leaf.rows:
            continue
        entries = []
        ok = False
        complete = True
        for i in range(1, n + 1):
            row = []
            for k in range(1, n + 1):
                v = shared.sys.var(i, k)
                if v in leaf.zeros:
                    row.append(RadicalSum())
                elif v in leaf.values:
                    row.append(RadicalSum.from_radical(leaf.values[v][0]))
                    ok = True
                else:
                    complete = False
                    break
            if not complete:
                break
            entries.append(tuple(row))
        if complete and ok:
            cand = HomCandidate(tuple(entries))
            if is_homomorphism_direct(g, cand):
                return cand
    return None
