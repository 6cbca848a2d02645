import pytest

from conftest import brute_lmax, perm_from_cycles, random_code
from permlabel.analysis import involution_set, min_distance
from permlabel.groups import CodeError, PermutationCode, agl, cyclic_group, dihedral
from permlabel.labeling import (
    LabelingCertificate,
    certify,
    cyclic_k,
    cyclic_optimal_labeling,
    distance_one_labeling,
    low_weight_representative,
    relabel,
    relabeled_generator,
    snake_cycle,
    snake_sequence,
    verify_certificate,
    worst_labeling,
)
from permlabel.perm import (
    CycleType,
    DegreeMismatchError,
    Permutation,
    cycle_type,
    inverse,
    is_single_cycle,
    weight,
)


def partitions(n, largest=None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def code(*elems):
    return PermutationCode.from_elements(elems)


class TestRelabel:
    def test_identity_label(self):
        g = agl(5)
        assert relabel(g, Permutation.identity(5)) == g

    @pytest.mark.parametrize("n", [3, 6])
    def test_moves_transposition(self, n):
        img = list(range(1, n + 1))
        img[1], img[n - 1] = n, 2
        c = code(Permutation.identity(n), perm_from_cycles(n, (1, 2)))
        r = relabel(c, Permutation(img))
        assert set(r.elements) == {Permutation.identity(n), perm_from_cycles(n, (1, n))}
        assert min_distance(r) == n - 1

    def test_round_trip(self, rng):
        for _ in range(30):
            c = random_code(rng, n_max=7)
            l = Permutation(rng.sample(range(1, c.n + 1), c.n))
            r = relabel(c, l)
            assert relabel(r, inverse(l)) == c
            assert len(r) == len(c) and r.is_group == c.is_group
            assert sorted(cycle_type(f).lengths for f in r) == sorted(cycle_type(f).lengths for f in c)

    def test_mismatch(self):
        with pytest.raises(DegreeMismatchError):
            relabel(agl(5), Permutation.identity(4))


class TestCertificate:
    def test_kind_checked(self):
        with pytest.raises(ValueError):
            LabelingCertificate(Permutation.identity(3), 1, "lucky")

    def test_verify(self):
        g = agl(7)
        cert = certify(g, Permutation.identity(7), "searched")
        assert cert.achieved_distance == 3
        assert verify_certificate(g, cert)
        assert not verify_certificate(g, LabelingCertificate(cert.label, 4, "searched"))


class TestSnake:
    def test_small(self):
        assert snake_cycle(3) == perm_from_cycles(3, (1, 2, 3))
        assert snake_cycle(5) == perm_from_cycles(5, (1, 2, 4, 5, 3))
        assert snake_cycle(6) == perm_from_cycles(6, (1, 2, 4, 6, 5, 3))

    @pytest.mark.parametrize("n", range(1, 13))
    def test_gaps(self, n):
        seq = snake_sequence(n)
        assert sorted(seq) == list(range(1, n + 1))
        assert all(abs(seq[i] - seq[(i + 1) % n]) <= 2 for i in range(n))
        f = snake_cycle(n)
        assert n == 1 or is_single_cycle(f)
        assert weight(f) <= 2


class TestLowWeight:
    def test_examples(self):
        assert low_weight_representative(CycleType((4,))) == snake_cycle(4)
        assert low_weight_representative(CycleType((1, 1, 1))).is_identity()
        r = low_weight_representative(CycleType((3, 2)))
        assert r == perm_from_cycles(5, (1, 2, 3), (4, 5))
        assert weight(r) == 2

    @pytest.mark.parametrize("n", range(1, 11))
    def test_all_partitions(self, n):
        for lam in partitions(n):
            t = CycleType(lam)
            r = low_weight_representative(t)
            assert weight(r) <= 2
            assert cycle_type(r) == t


class TestWorst:
    def test_far_transposition(self):
        c = code(Permutation.identity(6), perm_from_cycles(6, (1, 6)))
        cert = worst_labeling(c)
        assert cert.achieved_distance == 1 and verify_certificate(c, cert)

    def test_c3(self):
        cert = worst_labeling(cyclic_group(perm_from_cycles(3, (1, 2, 3))))
        assert cert.achieved_distance == 2

    def test_agl7(self):
        assert worst_labeling(agl(7)).achieved_distance <= 2

    def test_singleton(self):
        with pytest.raises(CodeError):
            worst_labeling(code(Permutation.identity(3)))

    def test_random(self, rng):
        for _ in range(100):
            c = random_code(rng)
            cert = worst_labeling(c)
            assert cert.achieved_distance <= 2
            assert verify_certificate(c, cert)
            assert cert.kind == "worst"


class TestDistanceOne:
    def test_transposition(self):
        c = code(Permutation.identity(4), perm_from_cycles(4, (1, 3)))
        cert = distance_one_labeling(c)
        r = relabel(c, cert.label)
        (t,) = [f for f in r if not f.is_identity()]
        u = min(t.moved_points())
        assert t == perm_from_cycles(4, (u, u + 1))
        assert cert.achieved_distance == 1

    def test_c3_absent(self):
        assert distance_one_labeling(cyclic_group(perm_from_cycles(3, (1, 2, 3)))) is None

    def test_dihedral4(self):
        cert = distance_one_labeling(dihedral(4))
        assert cert is not None and cert.achieved_distance == 1

    def test_random(self, rng):
        for _ in range(100):
            c = random_code(rng)
            cert = distance_one_labeling(c)
            assert (cert is None) == (not involution_set(c))
            if cert is not None:
                assert cert.achieved_distance == 1 and verify_certificate(c, cert)


class TestCyclic:
    def test_k_exact(self):
        # boundary values where 4n - 3 is a perfect square: n = 1, 3, 7, 13, 21
        assert [cyclic_k(n) for n in (1, 2, 3, 4, 7, 8, 13, 14, 21)] == [0, 1, 1, 2, 2, 3, 3, 4, 4]

    def test_k_oracle(self):
        # k is the least integer with k(k+1) >= n - 1
        for n in range(1, 3000):
            k = cyclic_k(n)
            assert k * (k + 1) >= n - 1 and (k == 0 or (k - 1) * k < n - 1)

    def test_golden_ten(self):
        f = perm_from_cycles(10, tuple(range(1, 11)))
        cert = cyclic_optimal_labeling(f)
        assert cert.achieved_distance == 7
        assert relabeled_generator(f, cert) == perm_from_cycles(10, (1, 2, 3, 10, 4, 9, 8, 5, 6, 7))

    @pytest.mark.parametrize("n,expected", [(3, 2), (7, 5)])
    def test_small(self, n, expected):
        f = perm_from_cycles(n, tuple(range(1, n + 1)))
        assert cyclic_optimal_labeling(f).achieved_distance == expected

    @pytest.mark.parametrize("n", range(2, 8))
    def test_matches_brute_force(self, n, rng):
        f = Permutation.from_cycles([rng.sample(range(1, n + 1), n)], n)
        g = cyclic_group(f)
        assert cyclic_optimal_labeling(f).achieved_distance == brute_lmax(g.elements)

    @pytest.mark.parametrize("n", [40, 111, 500, 1000])
    def test_large(self, n, rng):
        f = Permutation.from_cycles([rng.sample(range(1, n + 1), n)], n)
        cert = cyclic_optimal_labeling(f)
        assert cert.achieved_distance >= n - cyclic_k(n)
        assert verify_certificate(cyclic_group(f), cert)

    def test_every_generator_small(self, rng):
        for n in range(2, 40):
            for _ in range(3):
                f = Permutation.from_cycles([rng.sample(range(1, n + 1), n)], n)
                assert cyclic_optimal_labeling(f).achieved_distance >= n - cyclic_k(n)

    def test_rejects(self):
        with pytest.raises(CodeError):
            cyclic_optimal_labeling(perm_from_cycles(4, (1, 2), (3, 4)))
