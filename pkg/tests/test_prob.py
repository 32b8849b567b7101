from math import sqrt

import numpy as np
import pytest

from diagbase.diag import OmegaPoint, build_group
from diagbase.errors import PreconditionError
from diagbase.perm import Perm, symmetric_table, cyclic_table
from diagbase.prob import (RowCodedGroup, centralizer_order_formula,
                           class_count_inequality_check,
                           class_intersection_formula,
                           exact_nonbase_pair_proportion,
                           fixing_prime_elements, monte_carlo_nonbase,
                           prime_order_candidates, q2_bound_by_classes,
                           q2_bound_exact, r_split_exact)


@pytest.fixture(scope="module")
def w2a5(A5):
    return build_group(A5, 2, "full", "sym-table")


@pytest.fixture(scope="module")
def inn2a5(A5):
    return build_group(A5, 2, "inner", "sym-table")


class TestFixingElements:
    def test_diagonal_point_gets_all(self, w2a5):
        fixers = fixing_prime_elements(w2a5, OmegaPoint.diagonal(2))
        cand_a, cand_p, _ = prime_order_candidates(w2a5)
        assert len(fixers) == len(cand_a)

    def test_tags_partition(self, w2a5):
        fixers = fixing_prime_elements(w2a5, OmegaPoint.diagonal(2))
        for a, p, tag in fixers:
            if p.is_identity():
                assert tag == 2
            elif not p.fixed_points():
                assert tag == 1
            else:
                assert tag == 3

    def test_centralizer_direction(self, A5, w2a5):
        # the centralizer of an order-5 element survives in the stabilizer,
        # tagged as trivial-permutation-part
        x = int(np.where(A5.order_of == 5)[0][0])
        om = OmegaPoint.from_tuple(A5, [x, 0])
        fixers = fixing_prime_elements(w2a5, om)
        inner_trivial = {a for a, p, tag in fixers if tag == 2
                         and a < A5.order}
        cx = {t for t in range(1, A5.order)
              if A5.mul[t, x] == A5.mul[x, t]}
        assert cx <= inner_trivial

    def test_cycle_statistics(self, A5):
        # p * (number of nontrivial cycles) + fixed points = k for each
        # prime-order element
        g = build_group(A5, 3, "full", "sym-table")
        cand_a, cand_p, tags = prime_order_candidates(g)
        aut_orders = g.T.aut.group_table().element_orders()
        for a, pid in zip(cand_a[:200], cand_p[:200]):
            perm = g.top.table.elements[int(pid)]
            o_a = int(aut_orders[int(a)])
            o_p = perm.order()
            p = max(o_a, o_p)
            f = len(perm.fixed_points())
            c = sum(1 for cyc in perm.cycles() if len(cyc) > 1)
            assert p * c + f == 3 or (o_p == 1 and f == 3)


class TestExactQuantities:
    def test_inn2_everything_nonbase(self, inn2a5):
        assert exact_nonbase_pair_proportion(inn2a5) == 1

    def test_alt3_strictly_less(self, A5):
        g = build_group(A5, 3, "inner", "alt-table")
        prop = exact_nonbase_pair_proportion(g)
        assert prop < 1

    def test_exact_below_bound(self, A5, w2a5, inn2a5):
        for g in (w2a5, inn2a5, build_group(A5, 3, "inner", "alt-table")):
            assert exact_nonbase_pair_proportion(g) <= q2_bound_exact(g)

    def test_bound_at_least_one_when_no_pairs(self, inn2a5):
        assert q2_bound_exact(inn2a5) >= 1

    def test_two_routes_agree(self, w2a5, inn2a5):
        for g in (w2a5, inn2a5):
            assert q2_bound_exact(g) == q2_bound_by_classes(g)

    def test_r_split_sums_to_bound(self, w2a5, inn2a5, A5):
        for g in (w2a5, inn2a5, build_group(A5, 3, "inner", "sym-table")):
            r1, r2, r3 = r_split_exact(g)
            assert r1 + r2 + r3 == q2_bound_exact(g)

    def test_r3_empty_at_k2(self, w2a5):
        # at k = 2 any nontrivial permutation part is fixed-point-free
        _r1, _r2, r3 = r_split_exact(w2a5)
        assert r3 == 0


class TestMonteCarlo:
    def test_all_nonbase_deterministic(self, inn2a5):
        a = monte_carlo_nonbase(inn2a5, 500, seed=1)
        b = monte_carlo_nonbase(inn2a5, 500, seed=1)
        assert a == b
        assert a["fraction"] == 1.0

    def test_unbiased_over_seeds(self, A5):
        g = build_group(A5, 3, "inner", "alt-table")
        exact = float(exact_nonbase_pair_proportion(g))
        samples = 400
        means = [monte_carlo_nonbase(g, samples, seed=s)["fraction"]
                 for s in range(30)]
        mean = sum(means) / len(means)
        sigma = sqrt(exact * (1 - exact) / (samples * len(means)))
        assert abs(mean - exact) <= 3 * sigma

    def test_workers_change_stream_but_stay_deterministic(self, inn2a5):
        a = monte_carlo_nonbase(inn2a5, 300, seed=2, workers=3)
        b = monte_carlo_nonbase(inn2a5, 300, seed=2, workers=3)
        assert a == b

    def test_symbolic_top_path(self, A5):
        g = build_group(A5, 6, "full", "sym")
        out = monte_carlo_nonbase(g, 30, seed=3)
        assert 0.0 <= out["fraction"] <= 1.0

    def test_large_k_cyclic_small_fraction(self, A5):
        g = build_group(A5, 37, "full", "cyclic")
        out = monte_carlo_nonbase(g, 2000, seed=0x5EED)
        assert out["fraction"] < 0.05


class TestFormulas:
    def test_identity_centralizer_is_group(self, w2a5):
        c = centralizer_order_formula(w2a5, w2a5.T.aut.identity_row,
                                      Perm.identity(2))
        assert c == w2a5.order

    def test_transposition_fpf_case(self, A5, w2a5):
        # alpha = 1, pi = (1 2) at k = 2: fixed-point-free branch
        c = centralizer_order_formula(w2a5, A5.aut.identity_row,
                                      Perm.parse("(1 2)", 2))
        assert c == 2 * 2 * 60
        rc = RowCodedGroup(w2a5)
        pid = w2a5.top.table.position(Perm.parse("(1 2)", 2))
        brute = rc.centralizer_count(((A5.aut.identity_row,) * 2, pid))
        assert c == brute

    def test_composite_rejected(self, A5, w2a5):
        six = int(np.where(
            A5.aut.group_table().element_orders() == 6)[0][0])
        with pytest.raises(PreconditionError):
            centralizer_order_formula(w2a5, six, Perm.parse("(1 2)", 2))

    def test_intersection_identity(self, w2a5):
        c = class_intersection_formula(w2a5, w2a5.T.aut.identity_row,
                                       Perm.identity(2))
        assert c == 1

    def test_intersection_requires_fixed_point(self, A5, w2a5):
        with pytest.raises(PreconditionError):
            class_intersection_formula(w2a5, A5.aut.identity_row,
                                       Perm.parse("(1 2)", 2))

    def test_intersection_transposition_k3(self, A5):
        g = build_group(A5, 3, "full", "sym-table")
        rc = RowCodedGroup(g)
        pid = g.top.table.position(Perm.parse("(1 2)", 3))
        found = [cls for cls in rc.class_data()
                 if cls["rep"] == ((A5.aut.identity_row,) * 3, pid)]
        assert found
        formula = class_intersection_formula(
            g, A5.aut.identity_row, Perm.parse("(1 2)", 3))
        assert formula == len(found[0]["diag_members"]) == 3

    def test_intersection_double_counting(self, A5):
        # summing |class ^ G_D| over classes recovers the number of
        # prime-order diagonal elements
        g = build_group(A5, 3, "inner", "sym-table")
        rc = RowCodedGroup(g)
        total = sum(len(c["diag_members"]) for c in rc.class_data())
        cand_a, _, _ = prime_order_candidates(g)
        assert total == len(cand_a)

    def test_formula_matches_brute_on_w2a5(self, w2a5):
        rc = RowCodedGroup(w2a5)
        for cls in rc.class_data():
            want = rc.order // cls["size"]
            for m in cls["diag_members"]:
                perm = w2a5.top.table.elements[m[1]]
                assert centralizer_order_formula(w2a5, m[0][0], perm) == want
                if perm.fixed_points():
                    assert class_intersection_formula(
                        w2a5, m[0][0], perm) == len(cls["diag_members"])


class TestClassCountInequality:
    def test_a5_in_s5(self):
        from diagbase.perm import alternating_table
        pairs = [(alternating_table(5), symmetric_table(5))]
        out = class_count_inequality_check(pairs)
        assert out[0]["holds"] and out[0]["index"] == 2

    def test_self_pair(self):
        s = symmetric_table(4)
        out = class_count_inequality_check([(s, s)])
        assert out[0]["holds"] and out[0]["index"] == 1

    def test_c5_in_a5(self):
        from diagbase.perm import alternating_table
        out = class_count_inequality_check(
            [(cyclic_table(5), alternating_table(5))])
        assert out[0]["holds"]

    def test_not_subgroup_rejected(self):
        with pytest.raises(PreconditionError):
            class_count_inequality_check(
                [(cyclic_table(4), symmetric_table(5))])


class TestRowCodedGroup:
    def test_order(self, w2a5):
        rc = RowCodedGroup(w2a5)
        assert rc.order == 14400
        rows, pids = rc.enumerate_arrays()
        assert len(rows) == 14400

    def test_group_axioms_on_samples(self, A5, w2a5):
        rc = RowCodedGroup(w2a5)
        rng = np.random.default_rng(9)
        rows, pids = rc.enumerate_arrays()
        for _ in range(50):
            i, j = rng.integers(0, len(rows), 2)
            x = (tuple(int(v) for v in rows[i]), int(pids[i]))
            y = (tuple(int(v) for v in rows[j]), int(pids[j]))
            xy = rc.multiply(x, y)
            assert rc.multiply(xy, rc.inverse(y)) == x

    def test_conjugation_preserves_diagonality_count(self, w2a5):
        rc = RowCodedGroup(w2a5)
        classes = rc.class_data()
        assert sum(len(c["diag_members"]) for c in classes) == \
            len(prime_order_candidates(w2a5)[0])
