import random
from fractions import Fraction

import pytest

from conftest import circle_rep, moebius, rational, symbol

from leaftype import (
    DomainTemplate,
    Representation,
    SurfacePresentation,
    Word,
    build_ball,
    commutator,
    genus_growth,
    glue_ball,
    intersection_number_mod2,
    lift_cycle,
)
from leaftype.gluing import AbstractCover
from leaftype.targets import MoebiusElement


def surface_for(rep, radius):
    return glue_ball(rep, build_ball(rep, radius))


class TestTemplate:
    def test_slot_layout(self):
        tpl = DomainTemplate(SurfacePresentation(1, 1))
        labels = [label for label, _ in tpl.slots]
        assert labels == ["a1", "b1", "a1", "b1", "s1", "beta1", "s1"]

    def test_letter_paths_effect_exactly_the_letter(self):
        # the shift-word product of each crossing sequence must equal the
        # letter as a free-group element (c_n compares against its rewrite)
        for g, n in [(0, 3), (1, 1), (1, 2), (2, 0), (2, 2), (3, 1)]:
            pres = SurfacePresentation(g, n)
            tpl = DomainTemplate(pres)
            for gen in pres.alphabet:
                product = tpl.path_shift_word(tpl.letter_path(gen))
                if n >= 1 and gen == pres.boundary_gens[-1]:
                    assert product == pres.last_boundary_word()
                else:
                    assert product == Word.generator(gen)

    def test_word_path_concatenates(self):
        pres = SurfacePresentation(0, 3)
        tpl = DomainTemplate(pres)
        w = Word.generator("c1") * Word.generator("c2", -1)
        assert tpl.path_shift_word(tpl.word_path(w)) == w


class TestBaseSurfaces:
    def test_pair_of_pants(self):
        rep = Representation.trivial(SurfacePresentation(0, 3))
        s = surface_for(rep, 2)
        assert (s.chi, s.r, s.genus) == (-1, 3, 0)
        assert s.connected
        assert s.closed_beta_indices() == {1, 2, 3}

    def test_closed_genus_two(self):
        rep = Representation.trivial(SurfacePresentation(2, 0))
        s = surface_for(rep, 2)
        assert (s.chi, s.r, s.genus) == (-2, 0, 2)

    def test_disk(self):
        rep = Representation.trivial(SurfacePresentation(0, 1))
        s = surface_for(rep, 1)
        assert (s.chi, s.r, s.genus) == (1, 1, 0)

    def test_torus(self):
        rep = Representation.trivial(SurfacePresentation(1, 0))
        s = surface_for(rep, 1)
        assert (s.chi, s.r, s.genus) == (0, 0, 1)

    def test_orientability(self):
        for pres in (SurfacePresentation(0, 3), SurfacePresentation(2, 0)):
            rep = Representation.trivial(pres)
            assert surface_for(rep, 2).orientation_consistent()


class TestEulerBookkeeping:
    def euler_recount(self, s):
        """Third, test-local recount of chi via a fresh corner union-find."""
        L = s.template.size
        parent = list(range(len(s.face_keys) * L))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[ry] = rx

        pair_count = 0
        for (fi, p), (fj, q) in s.pairings.items():
            if (fi, p) <= (fj, q):
                pair_count += 1
                union(fi * L + p, fj * L + (q + 1) % L)
                union(fi * L + (p + 1) % L, fj * L + q)
        V = len({find(x) for x in range(len(parent))})
        E = pair_count + len(s.free_sides)
        return V - E + len(s.face_keys)

    @pytest.mark.parametrize("radius", [1, 2, 3])
    def test_recount_matches(self, log3_case2, radius):
        s = surface_for(log3_case2, radius)
        assert self.euler_recount(s) == s.chi

    def test_recount_matches_moebius(self, genus2_free_rep):
        s = surface_for(genus2_free_rep, 2)
        assert self.euler_recount(s) == s.chi
        assert s.genus >= 0


class TestCoverGrowth:
    def test_planar_case_genus_zero_boundary_grows(self, log3_case1):
        rows = genus_growth(log3_case1, (2, 4, 6))
        assert [row["genus"] for row in rows] == [0, 0, 0]
        rs = [row["boundary_components"] for row in rows]
        assert rs[0] < rs[1] < rs[2]

    def test_torsion_case_genus_strictly_increases(self, log3_case2):
        rows = genus_growth(log3_case2, (2, 4, 6))
        genera = [row["genus"] for row in rows]
        assert genera[0] < genera[1] < genera[2]

    def test_trivial_rep_constant(self):
        rep = Representation.trivial(SurfacePresentation(0, 3))
        rows = genus_growth(rep, (1, 2, 3))
        assert all((row["genus"], row["boundary_components"]) == (0, 3) for row in rows)

    def test_genus_nondecreasing_random_reps(self):
        rng = random.Random(23)
        for _ in range(8):
            exps = [
                rational(rng.randint(1, 3), rng.choice([2, 3, 4])),
                symbol("t", rng.choice([1, -1])),
            ]
            total = exps[0] + exps[1]
            rep = circle_rep(3, [exps[0], exps[1], -total])
            genera = [row["genus"] for row in genus_growth(rep, (1, 2, 3, 4))]
            assert all(a <= b for a, b in zip(genera, genera[1:]))

    def test_schedule_must_increase(self, log3_case1):
        with pytest.raises(ValueError):
            genus_growth(log3_case1, (4, 2))


class TestLifts:
    def test_trivial_boundary_loop_closes(self):
        rep = Representation.trivial(SurfacePresentation(0, 3))
        s = surface_for(rep, 1)
        p = lift_cycle(rep, s, Word.generator("c1"))
        assert p.closed
        assert len(p) == 1

    def test_commutator_closes_on_torsion_cover(self, log3_case2):
        s = surface_for(log3_case2, 6)
        w = commutator(Word.generator("c1"), Word.generator("c2"))
        assert lift_cycle(log3_case2, s, w).closed

    def test_boundary_lift_exits_on_rank_two_cover(self, log3_case3):
        s = surface_for(log3_case3, 4)
        p = lift_cycle(log3_case3, s, Word.generator("c1", 9))
        assert p.exits_ball
        assert not p.closed

    def test_closed_iff_kernel_membership(self, log3_case2):
        s = surface_for(log3_case2, 8)
        half_loop = Word.generator("c2")  # image has order 2
        assert not lift_cycle(log3_case2, s, half_loop).closed
        assert lift_cycle(log3_case2, s, half_loop * half_loop).closed

    def test_unknown_base_rejected(self, log3_case2):
        s = surface_for(log3_case2, 2)
        with pytest.raises(ValueError):
            lift_cycle(log3_case2, s, Word.generator("c1"), base="nonsense")


class TestIntersection:
    def test_torus_handle_pair(self):
        rep = Representation.trivial(SurfacePresentation(1, 0))
        s = surface_for(rep, 1)
        pa = lift_cycle(rep, s, Word.generator("a1"))
        pb = lift_cycle(rep, s, Word.generator("b1"))
        assert intersection_number_mod2(pa, pb) == 1
        assert intersection_number_mod2(pb, pa) == 1

    def test_reversal_invariance(self):
        rep = Representation.trivial(SurfacePresentation(1, 0))
        s = surface_for(rep, 1)
        pa = lift_cycle(rep, s, Word.generator("a1"))
        pb_rev = lift_cycle(rep, s, Word.generator("b1", -1))
        assert intersection_number_mod2(pa, pb_rev) == 1

    def test_null_homologous_commutator(self):
        rep = Representation.trivial(SurfacePresentation(1, 0))
        s = surface_for(rep, 1)
        pc = lift_cycle(rep, s, commutator(Word.generator("a1"), Word.generator("b1")))
        pa = lift_cycle(rep, s, Word.generator("a1"))
        assert intersection_number_mod2(pc, pa) == 0

    def test_trivial_loop_gives_zero(self, log3_case2):
        s = surface_for(log3_case2, 6)
        w = commutator(Word.generator("c1"), Word.generator("c2"))
        p = lift_cycle(log3_case2, s, w)
        trivial = lift_cycle(log3_case2, s, Word())
        assert intersection_number_mod2(p, trivial) == 0

    def test_witness_pair_on_cyclic_cover(self):
        # frozen from the independent hand count of chord crossings on the
        # order-3 cyclic cover: faces id and 2g contribute three crossings
        rep = circle_rep(3, [rational(1, 3)] * 3)
        s = surface_for(rep, 8)
        g1 = commutator(Word.generator("c1"), Word.generator("c2"))
        g2 = commutator(Word.generator("c1", -1), Word.generator("c2"))
        p1, p2 = lift_cycle(rep, s, g1), lift_cycle(rep, s, g2)
        assert p1.closed and p2.closed
        assert intersection_number_mod2(p1, p2) == 1

    def test_witness_pair_on_mixed_cover(self, log3_case2):
        # frozen from the independent hand count on the Z x Z/2 cover
        s = surface_for(log3_case2, 8)
        g1 = commutator(Word.generator("c1"), Word.generator("c2"))
        g2 = commutator(Word.generator("c1", -1), Word.generator("c2"))
        p1, p2 = lift_cycle(log3_case2, s, g1), lift_cycle(log3_case2, s, g2)
        assert intersection_number_mod2(p1, p2) == 1

    def test_parallel_boundary_circles_disjoint(self):
        rep = circle_rep(3, [rational(1, 2), rational(1, 2), rational(0)])
        s = surface_for(rep, 4)
        w = Word.generator("c1", 2)
        keys = sorted(s.ball.distances)
        p1 = lift_cycle(rep, s, w, keys[0])
        p2 = lift_cycle(rep, s, w, keys[1])
        assert intersection_number_mod2(p1, p2) == 0

    def test_open_path_rejected(self, log3_case3):
        s = surface_for(log3_case3, 3)
        open_path = lift_cycle(log3_case3, s, Word.generator("c1"))
        closed = lift_cycle(
            log3_case3, s, commutator(Word.generator("c1"), Word.generator("c2"))
        )
        with pytest.raises(ValueError):
            intersection_number_mod2(open_path, closed)

    def test_parity_stable_under_ball_enlargement(self, log3_case2):
        g1 = commutator(Word.generator("c1"), Word.generator("c2"))
        g2 = commutator(Word.generator("c1", -1), Word.generator("c2"))
        parities = []
        for radius in (6, 8, 10):
            s = surface_for(log3_case2, radius)
            parities.append(
                intersection_number_mod2(
                    lift_cycle(log3_case2, s, g1), lift_cycle(log3_case2, s, g2)
                )
            )
        assert parities == [1, 1, 1]

    def test_abstract_cover_agrees_with_ball(self, log3_case2):
        g1 = commutator(Word.generator("c1"), Word.generator("c2"))
        g2 = commutator(Word.generator("c1", -1), Word.generator("c2"))
        cover = AbstractCover(log3_case2)
        q1, q2 = cover.lift(g1), cover.lift(g2)
        assert q1.closed and q2.closed
        assert intersection_number_mod2(q1, q2) == 1


class TestLemmaOneReflection:
    def test_finite_order_boundary_closes(self, log3_case1):
        s = surface_for(log3_case1, 6)
        assert 2 in s.closed_beta_indices()  # exponent 1 has order 1

    def test_infinite_order_boundaries_reach_frontier(self, log3_case1):
        s = surface_for(log3_case1, 6)
        closed = s.closed_beta_indices()
        assert 1 not in closed and 3 not in closed

    def test_all_infinite_no_closed_beta(self, log3_case3):
        s = surface_for(log3_case3, 4)
        assert s.closed_beta_indices() == set()


class TestFiniteCoverAgainstFormula:
    @pytest.mark.parametrize(
        "exps,expected",
        [
            (((1, 2), (1, 2), (0, 1)), (0, 4)),
            (((1, 3), (1, 3), (1, 3)), (1, 3)),
            (((1, 2), (1, 3), (1, 6)), (1, 6)),
        ],
    )
    def test_saturated_ball_matches_formula(self, exps, expected):
        from leaftype import riemann_hurwitz_finite
        from leaftype.targets import deck_group_is_finite

        rep = circle_rep(3, [rational(p, q) for p, q in exps])
        finite, k = deck_group_is_finite(rep)
        assert finite
        label = riemann_hurwitz_finite(rep)
        assert (label.genus, label.punctures) == expected
        s = surface_for(rep, k)
        assert (s.genus, s.r) == expected

    def test_nonabelian_symmetric_cover(self):
        # S3 holonomy on the three-punctured sphere: the conjugated shift
        # pairings are what make the saturated complex the genuine cover
        from leaftype import Representation, SurfacePresentation, riemann_hurwitz_finite
        from leaftype.targets import PermutationElement

        pres = SurfacePresentation(0, 3)
        rep = Representation(
            pres,
            "permutation",
            {
                "c1": PermutationElement.of([1, 0, 2]),
                "c2": PermutationElement.of([0, 2, 1]),
            },
        )
        label = riemann_hurwitz_finite(rep)
        assert (label.genus, label.punctures) == (0, 8)
        s = surface_for(rep, 6)
        assert s.connected
        assert (s.genus, s.r) == (0, 8)
        small = surface_for(rep, 1)
        assert small.genus >= 0  # partial nonabelian balls stay consistent
