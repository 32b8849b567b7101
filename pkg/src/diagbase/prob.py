"""Fixed-point counting bounds and class/centralizer formulas, exactly.

Everything enumerable is an exact rational.  The second-moment bound on the
proportion of non-base pairs is evaluated by double counting: summing, over
all points, the number of prime-order diagonal-stabilizer elements fixing
each point, divided by the degree.  The same quantity decomposes over
conjugacy classes into three contributions split by the permutation part
(fixed-point-free, trivial, or mixed), and the class data itself is computed
twice: by the displayed product formulas and by brute-force orbit
enumeration in a row-coded copy of the full group.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from . import _accel
from .diag import DiagTypeGroup, OmegaPoint, omega_iter
from .errors import PreconditionError
from .perm import Perm, _is_prime

DEFAULT_SEED = 0x5EED


# ---------------------------------------------------------------------------
# prime-order diagonal candidates and their R-tags


def _top_order_info(g: DiagTypeGroup):
    table = g.top.table
    orders = table.element_orders()
    fixes = np.array([len(p.fixed_points()) for p in table.elements])
    return orders, fixes


def prime_order_candidates(g: DiagTypeGroup):
    """(cand_a, cand_p, tags) for the prime-order elements of G_D.

    Tags: 1 = permutation part fixed-point-free, 2 = trivial permutation
    part, 3 = nontrivial with a fixed point.  Explicit tops only.
    """
    cache = getattr(g, "_prime_cache", None)
    if cache is not None:
        return cache
    if g.top.is_symbolic:
        raise PreconditionError(
            "prime-order candidate listing needs an explicit top")
    aut_orders = {int(r): g.T.aut.group_table().elements[int(r)].order()
                  for r in g.aut_rows}
    top_orders, top_fixes = _top_order_info(g)
    cand_a, cand_p, tags = [], [], []
    for r in g.aut_rows:
        oa = aut_orders[int(r)]
        for pid in range(len(top_orders)):
            op = int(top_orders[pid])
            order = oa * op // gcd(oa, op)
            if not _is_prime(order):
                continue
            cand_a.append(int(r))
            cand_p.append(pid)
            if op == 1:
                tags.append(2)
            elif top_fixes[pid] == 0:
                tags.append(1)
            else:
                tags.append(3)
    cache = (np.array(cand_a, dtype=np.int32),
             np.array(cand_p, dtype=np.int32),
             np.array(tags, dtype=np.int8))
    g._prime_cache = cache
    return cache


def fixing_prime_elements(g: DiagTypeGroup, point: OmegaPoint):
    """Prime-order diagonal elements fixing the point, with R-tags."""
    cand_a, cand_p, tags = prime_order_candidates(g)
    tuples = _accel.as_tuple_matrix([point.as_array()], g.k)
    mask = _accel.filter_candidates(
        g.T.aut.rows, g.top.table.arrays().astype(np.int32), cand_a, cand_p,
        tuples, g.T.mul, g.T.inv).astype(bool)
    out = []
    for i in np.nonzero(mask)[0]:
        out.append((int(cand_a[i]),
                    g.top.table.elements[int(cand_p[i])],
                    int(tags[i])))
    return out


# ---------------------------------------------------------------------------
# exact bounds over the whole point set


def _all_tuples(g: DiagTypeGroup, budget):
    return _accel.as_tuple_matrix(
        [p.as_array() for p in omega_iter(g, budget)], g.k)


def q2_bound_exact(g: DiagTypeGroup, budget: int = 10**7) -> Fraction:
    """The second-moment bound at b = 2, as an exact rational.

    Evaluated via the transitivity identity: (1/n) * sum over points of the
    number of prime-order diagonal-stabilizer elements fixing the point.
    """
    cand_a, cand_p, _tags = prime_order_candidates(g)
    tuples = _all_tuples(g, budget)
    counts = _accel.count_per_tuple(
        g.T.aut.rows, g.top.table.arrays().astype(np.int32), cand_a, cand_p,
        tuples, g.T.mul, g.T.inv)
    return Fraction(int(counts.sum()), g.degree)


def exact_nonbase_pair_proportion(g: DiagTypeGroup,
                                  budget: int = 10**7) -> Fraction:
    """Exact proportion of ordered point pairs that are not bases.

    By transitivity this is the fraction of points whose pair with D has a
    nontrivial stabilizer; a nontrivial stabilizer always contains an element
    of prime order, so scanning the prime-order candidates is exhaustive.
    """
    cand_a, cand_p, _tags = prime_order_candidates(g)
    tuples = _all_tuples(g, budget)
    detected = _accel.detect_per_tuple(
        g.T.aut.rows, g.top.table.arrays().astype(np.int32), cand_a, cand_p,
        tuples, g.T.mul, g.T.inv)
    return Fraction(int(detected.sum()), g.degree)


def monte_carlo_nonbase(g: DiagTypeGroup, samples: int,
                        seed: int = DEFAULT_SEED, workers: int = 1):
    """Monte-Carlo estimate of the non-base pair proportion.

    Points are sampled uniformly (independent coordinates past the first);
    the per-sample test runs G_D-side only, so large point sets cost nothing.
    Each worker consumes its own deterministically spawned seed stream, so
    the result depends only on (samples, seed, workers).
    """
    if samples < 1:
        raise PreconditionError("need at least one sample")
    chunks = np.array_split(np.arange(samples), workers)
    streams = np.random.SeedSequence(seed).spawn(workers)

    def run_chunk(pair):
        chunk, stream = pair
        if len(chunk) == 0:
            return 0
        rng = np.random.default_rng(stream)
        tuples = np.zeros((len(chunk), g.k), dtype=np.int32)
        tuples[:, 1:] = rng.integers(0, g.T.order, size=(len(chunk), g.k - 1),
                                     dtype=np.int32)
        return int(_detect_nonbase(g, tuples).sum())

    # integer sum over per-chunk streams: identical result either way
    if workers > 1 and not g.top.is_symbolic:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=workers) as pool:
            hits = sum(pool.map(run_chunk, zip(chunks, streams)))
    else:
        hits = sum(run_chunk(pair) for pair in zip(chunks, streams))
    return {
        "fraction": hits / samples,
        "hits": hits,
        "samples": samples,
        "seed": seed,
        "workers": workers,
    }


def _detect_nonbase(g: DiagTypeGroup, tuples):
    if g.top.is_symbolic:
        from .baseengine import _solve_symbolic
        out = np.zeros(len(tuples), dtype=np.uint8)
        for j, t in enumerate(tuples):
            found = _solve_symbolic(g, t.reshape(1, -1), mode="witness",
                                    node_budget=10**6)
            out[j] = 1 if found else 0
        return out
    cand_a, cand_p, _tags = prime_order_candidates(g)
    return _accel.detect_per_tuple(
        g.T.aut.rows, g.top.table.arrays().astype(np.int32), cand_a, cand_p,
        np.ascontiguousarray(tuples), g.T.mul, g.T.inv)


# ---------------------------------------------------------------------------
# class and centralizer formulas (full outer part)


def _perm_centralizer_order(g, perm: Perm) -> int:
    table = g.top.table
    return sum(1 for q in table.elements
               if (perm * q)._key == (q * perm)._key)


def _out_centralizer_order(g, aut_row: int) -> int:
    aut = g.T.aut
    lab = int(aut.labels[aut_row])
    lm = aut.label_mul
    return sum(1 for b in g.out_labels if lm[lab, b] == lm[b, lab])


def _relative_aut_centralizers(g, aut_row: int):
    """(|C_X(alpha)|, |C_Inn(alpha)|) where X is the out-part preimage."""
    aut = g.T.aut
    row = aut.rows[aut_row]
    sub = aut.rows[g.aut_rows]
    eq = np.all(sub[:, row] == row[sub], axis=1)
    inn_mask = g.aut_rows < g.T.order
    return int(eq.sum()), int(eq[inn_mask].sum())


def centralizer_order_formula(g: DiagTypeGroup, aut_row: int,
                              perm: Perm) -> int:
    """|C_G(x)| for a prime-order diagonal x = (alpha,...,alpha)pi.

    Fixed-point-free permutation part:
        |C_P(pi)| * |C_O(label)| * |T|^(k/p)
    otherwise:
        |C_P(pi)| * |C_X(alpha)| * |C_Inn(alpha)|^(f-1) * |T|^((k-f)/p)
    with f the number of fixed points of pi, X the preimage in Aut(T) of the
    group's out-part O (all of Aut(T) for a full out-part, Inn(T) for the
    inner one).  The identity is allowed as the degenerate case; composite
    orders are rejected.
    """
    T = g.T
    if int(T.aut.labels[aut_row]) not in g.out_labels:
        raise PreconditionError("automorphism label outside the out-part")
    o_a = T.aut.group_table().elements[aut_row].order()
    o_p = perm.order()
    order = o_a * o_p // gcd(o_a, o_p)
    if order == 1:
        return g.top.order * len(g.aut_rows) * T.order ** (g.k - 1)
    if not _is_prime(order):
        raise PreconditionError("element order is composite")
    p = order
    f = len(perm.fixed_points())
    cp = _perm_centralizer_order(g, perm)
    if f == 0:
        return cp * _out_centralizer_order(g, aut_row) * T.order ** (g.k // p)
    c_x, c_inn = _relative_aut_centralizers(g, aut_row)
    return cp * c_x * c_inn ** (f - 1) * T.order ** ((g.k - f) // p)


def class_intersection_formula(g: DiagTypeGroup, aut_row: int,
                               perm: Perm) -> int:
    """|x^G intersect G_D| = |alpha^X| * |pi^P| (pi must fix a point);
    X is the out-part preimage in Aut(T)."""
    if not perm.fixed_points():
        raise PreconditionError(
            "intersection formula requires a permutation part with a "
            "fixed point")
    c_x, _ = _relative_aut_centralizers(g, aut_row)
    alpha_class = len(g.aut_rows) // c_x
    pi_class = g.top.order // _perm_centralizer_order(g, perm)
    return alpha_class * pi_class


def class_count_inequality_check(pairs):
    """Assert f_p(Y) <= [X:Y] f_p(X) for each (Y, X) subgroup pair."""
    results = []
    for Y, X in pairs:
        if not Y.is_subgroup_of(X):
            raise PreconditionError("first table is not a subgroup of second")
        fy, fx = Y.prime_order_class_count(), X.prime_order_class_count()
        index = X.order // Y.order
        results.append({
            "f_p_sub": fy,
            "f_p_whole": fx,
            "index": index,
            "holds": fy <= index * fx,
        })
    return results


# ---------------------------------------------------------------------------
# brute-force oracle: a row-coded copy of the full group


class RowCodedGroup:
    """G = A_O(k,T) x| P materialized as (k aut-row ids, perm id) codes.

    Supports product, inverse, and conjugation through the automorphism
    composition table; used as the independent oracle for the class and
    centralizer formulas.  Sized for full enumeration (millions of codes).
    """

    def __init__(self, g: DiagTypeGroup):
        if g.top.is_symbolic:
            raise PreconditionError("row-coded enumeration needs an explicit top")
        self.g = g
        self.T = g.T
        self.comp = self.T.aut.composition_table()
        self.inv_row = np.array(
            [self.T.aut.invert_row(r) for r in range(self.T.aut.n_aut)],
            dtype=np.int32)
        table = g.top.table
        self.n_top = table.order
        self.top_arr = table.arrays().astype(np.int32)
        self.tmul = np.array(
            [[table.position(p * q) for q in table.elements]
             for p in table.elements], dtype=np.int32)
        self.tinv = np.array([table.position(p.inverse())
                              for p in table.elements], dtype=np.int32)
        self.order = (self.T.order ** (g.k - 1)) * g.gd_order

    def multiply(self, x, y):
        xr, xp = x
        yr, yp = y
        pi = self.top_arr[xp]
        rows = tuple(int(self.comp[xr[i], yr[pi[i]]]) for i in range(self.g.k))
        return rows, int(self.tmul[xp, yp])

    def inverse(self, x):
        xr, xp = x
        pinv = int(self.tinv[xp])
        qi = self.top_arr[pinv]
        rows = tuple(int(self.inv_row[xr[qi[i]]]) for i in range(self.g.k))
        return rows, pinv

    def conjugate(self, x, s):
        return self.multiply(self.multiply(self.inverse(s), x), s)

    def generators(self):
        T, k = self.T, self.g.k
        gens = []
        ident = tuple([int(T.aut.identity_row)] * k)
        for gid in T.gen_ids:
            r = int(T.aut.inn_of(gid))
            for pos in range(k):
                rows = list(ident)
                rows[pos] = r
                gens.append((tuple(rows), 0))
        for lab in self.g.out_labels:
            if lab:
                r = int(T.aut.label_reps[lab])
                gens.append((tuple([r] * k), 0))
        for p in self.g.top.table.generators:
            gens.append((ident, self.g.top.table.position(p)))
        return gens

    def element_count(self):
        return self.order

    # -- enumeration (vectorized) -------------------------------------------

    def enumerate_arrays(self):
        """All elements as (rows array (N, k), perm id array (N,))."""
        T, k = self.T, self.g.k
        n = T.order
        base = self.g.aut_rows.astype(np.int64)          # alpha_1 choices
        inner = np.arange(n, dtype=np.int64)             # offsets per coord
        grids = np.meshgrid(base, *([inner] * (k - 1)), indexing="ij")
        a1 = grids[0].ravel()
        rows = np.empty((a1.size, k), dtype=np.int32)
        rows[:, 0] = a1
        for c in range(1, k):
            rows[:, c] = self.comp[grids[c].ravel(), a1]
        reps = np.repeat(rows, self.n_top, axis=0)
        pids = np.tile(np.arange(self.n_top, dtype=np.int32), rows.shape[0])
        return reps, pids

    def centralizer_count(self, x):
        """|C_G(x)| by direct scan of the full element arrays."""
        rows, pids = self.enumerate_arrays()
        xr, xp = x
        xr = np.asarray(xr, dtype=np.int64)
        xpi = self.top_arr[xp].astype(np.int64)
        total = 0
        for q in range(self.n_top):
            if self.tmul[xp, q] != self.tmul[q, xp]:
                continue
            sel = rows[pids == q]
            qarr = self.top_arr[q].astype(np.int64)
            ok = np.ones(len(sel), dtype=bool)
            for i in range(self.g.k):
                lhs = self.comp[xr[i], sel[:, xpi[i]]]
                rhs = self.comp[sel[:, i], xr[qarr[i]]]
                ok &= lhs == rhs
            total += int(ok.sum())
        return total

    # -- class orbits ---------------------------------------------------------

    def diagonal_prime_order_elements(self):
        cand_a, cand_p, tags = prime_order_candidates(self.g)
        out = []
        for a, p, tag in zip(cand_a, cand_p, tags):
            out.append(((tuple([int(a)] * self.g.k), int(p)), int(tag)))
        return out

    def class_data(self):
        """BFS conjugation orbits seeded from diagonal prime-order elements.

        Returns a list of dicts: class size, the diagonal members, the R-tag,
        and a representative.  Cached after the first call.
        """
        cached = getattr(self, "_class_data", None)
        if cached is not None:
            return cached
        gens = self.generators()
        diag, tag_of = [], {}
        for x, tag in self.diagonal_prime_order_elements():
            diag.append(x)
            tag_of[x] = tag
        assigned = {}
        classes = []
        for x in diag:
            if x in assigned:
                continue
            cid = len(classes)
            members = {x}
            frontier = [x]
            while frontier:
                y = frontier.pop()
                for s in gens:
                    z = self.conjugate(y, s)
                    if z not in members:
                        members.add(z)
                        frontier.append(z)
            diag_members = [m for m in members
                            if len(set(m[0])) == 1]
            for m in diag_members:
                assigned[m] = cid
            classes.append({
                "rep": x,
                "size": len(members),
                "diag_members": diag_members,
                "tag": tag_of[x],
            })
        self._class_data = classes
        return classes


def r_split_exact(g: DiagTypeGroup):
    """The three class-sum contributions (fpf / trivial / mixed permutation
    part), each an exact rational; they sum to the second-moment bound."""
    rc = RowCodedGroup(g)
    split = {1: Fraction(0), 2: Fraction(0), 3: Fraction(0)}
    for cls in rc.class_data():
        contrib = Fraction(len(cls["diag_members"]) ** 2, cls["size"])
        split[cls["tag"]] += contrib
    return split[1], split[2], split[3]


def q2_bound_by_classes(g: DiagTypeGroup, budget: int = 10**7) -> Fraction:
    """Per-class evaluation of the bound: sum |x^G| (fix(x)/n)^2 over
    prime-order classes (those missing every point stabilizer contribute 0)."""
    rc = RowCodedGroup(g)
    tuples = _all_tuples(g, budget)
    total = Fraction(0)
    for cls in rc.class_data():
        a = cls["rep"][0][0]
        perm = g.top.table.elements[cls["rep"][1]]
        fix = int(_accel.count_per_tuple(
            g.T.aut.rows, g.top.table.arrays().astype(np.int32),
            np.array([a], dtype=np.int32),
            np.array([g.top.table.position(perm)], dtype=np.int32),
            tuples, g.T.mul, g.T.inv).sum())
        total += cls["size"] * Fraction(fix, g.degree) ** 2
    return total


# ---------------------------------------------------------------------------
# report container


@dataclass
class ProbReport:
    group: dict
    n: int
    exact_nonbase_pair_fraction: Fraction | None = None
    q2_bound: Fraction | None = None
    r_split: tuple | None = None
    mc_estimate: dict | None = None

    def describe(self):
        def frac(x):
            if x is None:
                return None
            return {"num": str(x.numerator), "den": str(x.denominator)}

        return {
            "group": self.group,
            "n": str(self.n),
            "exact_nonbase_pair_fraction":
                frac(self.exact_nonbase_pair_fraction),
            "q2_bound": frac(self.q2_bound),
            "r_split": None if self.r_split is None else
                [frac(r) for r in self.r_split],
            "mc_estimate": self.mc_estimate,
        }
