"""Field arithmetic, linear algebra, enumeration and embedding tests."""

import random
from fractions import Fraction
from math import gcd

import pytest

from ksmooth.errors import (
    DescriptorMismatch,
    DivisionByZero,
    NoSolution,
    WrongCharacteristic,
)
from ksmooth.fields import (
    QQ,
    FieldDescriptor,
    FieldMatrix,
    RationalScalar,
    enumerate_field,
    enumerate_projective_points,
    field_from_json,
    field_to_json,
    find_irreducible,
    frobenius,
    get_descriptor,
    get_embedding,
    is_irreducible,
    normalize_projective,
    sqrt_char2,
)

F2 = get_descriptor(2)
F3 = get_descriptor(3)
F4 = get_descriptor(2, 2)
F8 = get_descriptor(2, 3)
F9 = get_descriptor(3, 2)

SMALL_FIELDS = [F2, F3, F4, F8, F9, get_descriptor(5), get_descriptor(2, 4)]


def brute_force_irreducibles(p, k):
    """Oracle: monic degree-k polynomials with no factorization into two
    smaller monic polynomials, found by exhaustive products."""
    def polys(deg):
        out = []
        for m in range(p ** deg):
            digits = []
            v = m
            for _ in range(deg):
                digits.append(v % p)
                v //= p
            out.append(digits + [1])
        return out

    def mul(a, b):
        prod = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
        return prod

    products = set()
    for da in range(1, k):
        db = k - da
        if db < da:
            continue
        for a in polys(da):
            for b in polys(db):
                products.add(tuple(mul(a, b)))
    return [tuple(f) for f in polys(k) if tuple(f) not in products]


class TestDescriptor:
    def test_rejects_composite_characteristic(self):
        with pytest.raises(ValueError):
            FieldDescriptor(4)
        with pytest.raises(ValueError):
            FieldDescriptor(1)

    def test_rejects_reducible_modulus(self):
        with pytest.raises(ValueError):
            FieldDescriptor(2, 2, [1, 0, 1])  # (u+1)^2

    def test_rejects_nonmonic_modulus(self):
        with pytest.raises(ValueError):
            FieldDescriptor(3, 2, [1, 0, 2])

    def test_prime_field_has_no_modulus(self):
        assert F3.modulus is None
        with pytest.raises(ValueError):
            FieldDescriptor(3, 1, [1, 1])

    def test_canonical_moduli(self):
        assert F4.modulus == (1, 1, 1)
        assert F8.modulus == (1, 1, 0, 1)
        assert F9.modulus == (1, 0, 1)

    def test_json_round_trip(self):
        for field in (F2, F9, QQ):
            assert field_from_json(field_to_json(field)) == field


class TestFindIrreducible:
    def test_degree_one_has_no_modulus(self):
        assert find_irreducible(3, 1) is None

    def test_unique_quadratic_over_f2(self):
        assert find_irreducible(2, 2) == [1, 1, 1]

    def test_cubic_over_f2_is_smallest_of_two(self):
        cands = brute_force_irreducibles(2, 3)
        assert sorted(cands) == [(1, 1, 0, 1), (1, 0, 1, 1)] or len(cands) == 2
        encodings = {sum(c * 2 ** i for i, c in enumerate(f)): f for f in cands}
        assert min(encodings) == 11
        assert find_irreducible(2, 3) == list(encodings[11]) == [1, 1, 0, 1]

    @pytest.mark.parametrize("p,k", [(2, 4), (3, 2), (3, 3), (5, 2)])
    def test_matches_brute_force_oracle(self, p, k):
        cands = brute_force_irreducibles(p, k)
        best = min(cands, key=lambda f: sum(c * p ** i for i, c in enumerate(f)))
        assert tuple(find_irreducible(p, k)) == best
        for f in cands:
            assert is_irreducible(list(f), p)


class TestElementOps:
    def test_char_two_addition(self):
        assert F2.one() + F2.one() == F2.zero()

    def test_f4_multiplication_forced_by_modulus(self):
        u = F4.element([0, 1])
        assert u * u == F4.element([1, 1])

    def test_f9_square_of_generator(self):
        u = F9.element([0, 1])
        assert u * u == F9.from_int(2)

    def test_division_by_zero(self):
        with pytest.raises(DivisionByZero):
            F4.one() / F4.zero()
        with pytest.raises(DivisionByZero):
            F4.zero().inv()

    def test_descriptor_mismatch(self):
        with pytest.raises(DescriptorMismatch):
            F2.one() + F3.one()

    @pytest.mark.parametrize("field", SMALL_FIELDS, ids=repr)
    def test_field_axioms_on_random_triples(self, field):
        rng = random.Random(7)
        els = field.elements()
        for _ in range(60):
            a, b, c = (els[rng.randrange(field.order)] for _ in range(3))
            assert (a + b) + c == a + (b + c)
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            assert a + (-a) == field.zero()
            if a:
                assert a * a.inv() == field.one()
                assert (a / a) == field.one()

    @pytest.mark.parametrize("field", SMALL_FIELDS, ids=repr)
    def test_pow_matches_repeated_product(self, field):
        rng = random.Random(3)
        els = field.elements()
        for _ in range(20):
            a = els[rng.randrange(field.order)]
            acc = field.one()
            for k in range(6):
                assert a ** k == acc
                acc = acc * a


class TestFrobenius:
    def test_f4_generator(self):
        u = F4.element([0, 1])
        assert frobenius(u, 1) == F4.element([1, 1])

    def test_f9_generator(self):
        u = F9.element([0, 1])
        assert frobenius(u, 1) == F9.element([0, 2])

    def test_fixes_one(self):
        for field in SMALL_FIELDS:
            assert frobenius(field.one(), 1) == field.one()

    @pytest.mark.parametrize("field", [F4, F8, F9, get_descriptor(2, 4)], ids=repr)
    def test_is_a_ring_homomorphism(self, field):
        rng = random.Random(11)
        els = field.elements()
        for _ in range(40):
            a = els[rng.randrange(field.order)]
            b = els[rng.randrange(field.order)]
            assert frobenius(a + b, 1) == frobenius(a, 1) + frobenius(b, 1)
            assert frobenius(a * b, 1) == frobenius(a, 1) * frobenius(b, 1)

    @pytest.mark.parametrize("field", [F4, F8, F9], ids=repr)
    def test_e_fold_composite_is_identity(self, field):
        for a in field.elements():
            assert frobenius(a, field.e) == a

    def test_fixes_prime_subfield_pointwise(self):
        for c in range(3):
            assert frobenius(F9.from_int(c), 1) == F9.from_int(c)


class TestSqrtChar2:
    def test_f4_sqrt_of_generator(self):
        u = F4.element([0, 1])
        root = sqrt_char2(u)
        assert root == F4.element([1, 1])
        assert root * root == u

    def test_trivial_values(self):
        assert sqrt_char2(F4.one()) == F4.one()
        assert sqrt_char2(F4.zero()) == F4.zero()

    @pytest.mark.parametrize("field", [F2, F4, F8, get_descriptor(2, 4)], ids=repr)
    def test_square_of_root_exhaustive(self, field):
        for x in field.elements():
            r = sqrt_char2(x)
            assert r * r == x

    def test_rejects_odd_characteristic(self):
        with pytest.raises(WrongCharacteristic):
            sqrt_char2(F3.one())


class TestMatrices:
    def test_kernel_example(self):
        m = FieldMatrix(F2, [[F2.zero(), F2.one(), F2.zero()],
                             [F2.one(), F2.zero(), F2.zero()],
                             [F2.zero(), F2.zero(), F2.zero()]])
        assert m.kernel() == [(F2.zero(), F2.zero(), F2.one())]

    def test_det_of_swap_matrix(self):
        m = FieldMatrix(F2, [[F2.zero(), F2.one()], [F2.one(), F2.zero()]])
        assert m.det() == F2.one()

    def test_det_of_identity(self):
        for field in (F3, F9):
            rows = [[field.one() if i == j else field.zero() for j in range(3)]
                    for i in range(3)]
            assert FieldMatrix(field, rows).det() == field.one()

    def test_moore_matrix_determinant_f4(self):
        u = F4.element([0, 1])
        m = FieldMatrix(F4, [[u, u + F4.one()], [u + F4.one(), u]])
        assert m.det() == F4.one()

    def test_solve_and_no_solution(self):
        m = FieldMatrix(F3, [[F3.from_int(1), F3.from_int(2)],
                             [F3.from_int(2), F3.from_int(4)]])
        x = m.solve([F3.from_int(1), F3.from_int(2)])
        assert [sum((a * b for a, b in zip(row, x)), F3.zero())
                for row in m.rows] == [F3.from_int(1), F3.from_int(2)]
        with pytest.raises(NoSolution):
            m.solve([F3.from_int(1), F3.from_int(0)])

    def test_kernel_vectors_annihilate(self):
        rng = random.Random(5)
        for field in (F2, F3, F4):
            els = field.elements()
            for _ in range(20):
                rows = [[els[rng.randrange(field.order)] for _ in range(4)]
                        for _ in range(3)]
                m = FieldMatrix(field, rows)
                for v in m.kernel():
                    for row in rows:
                        assert not sum((a * b for a, b in zip(row, v)),
                                       field.zero())

    @pytest.mark.parametrize("m", [1, 3, 5])
    def test_odd_skew_symmetric_zero_diagonal_has_det_zero(self, m):
        # symmetric + zero diagonal = skew-symmetric in characteristic 2
        rng = random.Random(m)
        for field in (F2, F4):
            els = field.elements()
            for _ in range(50):
                rows = [[field.zero()] * m for _ in range(m)]
                for i in range(m):
                    for j in range(i + 1, m):
                        c = els[rng.randrange(field.order)]
                        rows[i][j] = c
                        rows[j][i] = c
                assert FieldMatrix(field, rows).det() == field.zero()

    def test_rationals_supported(self):
        m = FieldMatrix(QQ, [[Fraction(1), Fraction(2)], [Fraction(3), Fraction(4)]])
        assert m.det() == Fraction(-2)
        assert m.rank() == 2


class TestEnumeration:
    def test_field_order_and_count(self):
        assert [str(x) for x in enumerate_field(F4)] == ["0", "1", "u", "u+1"]
        assert [str(x) for x in enumerate_field(F3)] == ["0", "1", "2"]
        assert len(enumerate_field(F8)) == 8

    def test_projective_line_over_f2(self):
        pts = list(enumerate_projective_points(F2, 1))
        assert pts == [(F2.zero(), F2.one()), (F2.one(), F2.zero()),
                       (F2.one(), F2.one())]

    @pytest.mark.parametrize("field,r", [(F2, 1), (F2, 2), (F3, 2), (F4, 2), (F3, 3)])
    def test_point_count(self, field, r):
        q = field.order
        pts = list(enumerate_projective_points(field, r))
        assert len(pts) == (q ** (r + 1) - 1) // (q - 1)

    def test_f3_plane_has_13_points(self):
        assert len(list(enumerate_projective_points(F3, 2))) == 13

    def test_first_nonzero_coordinate_is_one(self):
        for pt in enumerate_projective_points(F9, 2):
            lead = next(c for c in pt if c)
            assert lead == F9.one()

    def test_no_two_points_proportional(self):
        pts = list(enumerate_projective_points(F4, 2))
        seen = set()
        for pt in pts:
            assert normalize_projective(pt) == pt
            assert pt not in seen
            seen.add(pt)
        # normalized and pairwise distinct => pairwise non-proportional


class TestEmbedding:
    def test_prime_into_extension_round_trip(self):
        emb = get_embedding(F2, F4)
        for x in F2.elements():
            up = emb.up(x)
            assert emb.down(up) == x

    def test_extension_tower_round_trip(self):
        big = get_descriptor(2, 4)
        emb = get_embedding(F4, big)
        for x in F4.elements():
            up = emb.up(x)
            assert emb.down(up) == x

    def test_embedding_is_a_homomorphism(self):
        big = get_descriptor(3, 4)
        emb = get_embedding(F9, big)
        els = F9.elements()
        rng = random.Random(2)
        for _ in range(30):
            a, b = els[rng.randrange(9)], els[rng.randrange(9)]
            assert emb.up(a * b) == emb.up(a) * emb.up(b)
            assert emb.up(a + b) == emb.up(a) + emb.up(b)

    def test_down_rejects_outside_subfield(self):
        big = get_descriptor(2, 4)
        emb = get_embedding(F4, big)
        image = {emb.up(x) for x in F4.elements()}
        outside = next(y for y in big.elements() if y not in image)
        with pytest.raises(NoSolution):
            emb.down(outside)


class TestRationalScalar:
    def test_is_reduced_with_positive_denominator(self):
        rng = random.Random(9)
        for _ in range(100):
            a = RationalScalar(rng.randint(-50, 50), rng.randint(1, 50))
            b = RationalScalar(rng.randint(-50, 50), rng.randint(1, 50))
            for v in (a + b, a - b, a * b):
                assert v.denominator > 0
                assert gcd(abs(v.numerator), v.denominator) == 1
            if b:
                v = a / b
                assert gcd(abs(v.numerator), v.denominator) == 1
