"""Explicit constructions: diagonal (Fermat) and cyclic (Klein) forms, normal
bases and Moore matrices, systems of smooth hypersurfaces with Galois descent
to the base field, the characteristic-zero lift, the characteristic-2 quadric
refutation machinery, and a built-in cubic system over GF(3).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import (
    ConstructionMismatch,
    EvenN,
    HypothesisViolated,
    NoSolution,
    NotFrobeniusCyclic,
    NotPrimeField,
    PreconditionViolated,
    RankViolated,
    ShapeViolated,
    WrongCharacteristic,
    ZeroCoefficient,
)
from .fields import (
    FieldDescriptor,
    FieldElement,
    FieldMatrix,
    QQ,
    element_to_json,
    frobenius,
    get_descriptor,
    get_embedding,
    normalize_projective,
    sqrt_char2,
)
from .multipoly import (
    HomogeneousForm,
    LinearSystemOfForms,
    coefficients_fixed_by_frobenius,
    frobenius_twist,
    monomial_key,
    system_to_json,
)
from .smoothness import SingularWitness, witness_verifies


def fermat_form(coefficients, degree):
    """Diagonal form c0*x0^d + c1*x1^d + ... + cn*xn^d.

    Cuts out a smooth hypersurface whenever every c_i is nonzero and the
    characteristic does not divide d (immediate from the Jacobian criterion).
    """
    cs = tuple(coefficients)
    if any(not c for c in cs):
        raise ZeroCoefficient("diagonal form needs every coefficient nonzero")
    field = cs[0].field
    nv = len(cs)
    terms = {}
    for i, c in enumerate(cs):
        exps = [0] * nv
        exps[i] = degree
        terms[tuple(exps)] = c
    return HomogeneousForm(field, nv, degree, terms)


def klein_form(coefficients, degree):
    """Cyclic form c0*x0^(d-1)*x1 + c1*x1^(d-1)*x2 + ... + cn*xn^(d-1)*x0,
    indices modulo n+1.

    Cuts out a smooth hypersurface whenever every c_i is nonzero, the
    characteristic divides d but not n+1.
    """
    cs = tuple(coefficients)
    if any(not c for c in cs):
        raise ZeroCoefficient("cyclic form needs every coefficient nonzero")
    if degree < 2:
        raise ValueError("degree must be >= 2")
    field = cs[0].field
    nv = len(cs)
    terms = []
    for i, c in enumerate(cs):
        exps = [0] * nv
        exps[i] += degree - 1
        exps[(i + 1) % nv] += 1
        terms.append((tuple(exps), c))
    return HomogeneousForm(field, nv, degree, terms)


@dataclass(frozen=True)
class MooreData:
    """A normal-basis element alpha of GF(q^(n+1)) over GF(q) with its Moore
    matrix A[j][i] = alpha^(q^(j+i)); row j applied to (x0, ..., xn) is the
    coordinate change y_j."""

    field: FieldDescriptor
    base: FieldDescriptor
    alpha: FieldElement
    matrix: FieldMatrix
    det: FieldElement


def normal_basis_search(p, e, n):
    """First element of GF(q^(n+1)) (canonical order, q = p^e) whose Frobenius
    orbit is a basis over GF(q); existence is the normal basis theorem."""
    base = get_descriptor(p, e)
    big = get_descriptor(p, e * (n + 1))
    nv = n + 1
    for alpha in big.elements():
        if not alpha:
            continue
        orbit = [alpha]
        for _ in range(n):
            orbit.append(frobenius(orbit[-1], e))
        rows = [[orbit[(i + j) % nv] for i in range(nv)] for j in range(nv)]
        matrix = FieldMatrix(big, rows)
        det = matrix.det()
        if det:
            return MooreData(field=big, base=base, alpha=alpha, matrix=matrix, det=det)
    raise AssertionError("unreachable: normal elements always exist")


@dataclass(frozen=True)
class ConstructionResult:
    """Raw big-field generators, their descent to the base field, and the
    Moore data used; case 1 = diagonal powers, case 2 = cyclic products."""

    p: int
    e: int
    n: int
    d: int
    case: int
    moore: MooreData
    raw_generators: tuple
    generators: tuple
    system: LinearSystemOfForms


def _moore_linear_forms(moore):
    big = moore.field
    nv = moore.matrix.nrows
    forms = []
    for row in moore.matrix.rows:
        terms = {}
        for j, c in enumerate(row):
            exps = [0] * nv
            exps[j] = 1
            terms[tuple(exps)] = c
        forms.append(HomogeneousForm(big, nv, 1, terms))
    return forms


def _check_equal_span(family_a, family_b):
    """Certify span equality by expressing each family in terms of the other."""
    field = family_a[0].field
    monos = sorted({m for f in list(family_a) + list(family_b) for m in f.terms},
                   key=monomial_key, reverse=True)
    zero = field.zero()
    mat_a = FieldMatrix(field, [[f.terms.get(m, zero) for f in family_a] for m in monos])
    mat_b = FieldMatrix(field, [[f.terms.get(m, zero) for f in family_b] for m in monos])
    try:
        for f in family_b:
            mat_a.solve([f.terms.get(m, zero) for m in monos])
        for f in family_a:
            mat_b.solve([f.terms.get(m, zero) for m in monos])
    except NoSolution as exc:
        raise AssertionError("descent changed the span of the family") from exc


def galois_descent(raw_generators, moore):
    """Base-field generators G_j = sum_i alpha^(q^(i+j)) * F_i of the span of
    a Frobenius-cyclic family F_0, ..., F_n over GF(q^(n+1)).

    Cyclicity (F_i mapped to F_(i+1 mod n+1) by the q-power Frobenius on
    coefficients) makes every G_j Frobenius-fixed; the Moore matrix is the
    change of basis, so the span is unchanged.
    """
    raw = list(raw_generators)
    nv = len(raw)
    base = moore.base
    big = moore.field
    for i in range(nv):
        if frobenius_twist(raw[i], base.e) != raw[(i + 1) % nv]:
            raise NotFrobeniusCyclic(
                "family is not cyclically permuted by the q-power Frobenius")
    orbit = moore.matrix.rows[0]
    big_gens = []
    for j in range(nv):
        g = HomogeneousForm.zero(big, raw[0].nvars, raw[0].degree)
        for i in range(nv):
            g = g + raw[i].scale(orbit[(i + j) % nv])
        big_gens.append(g)
    for g in big_gens:
        if not coefficients_fixed_by_frobenius(g, base.e):
            raise AssertionError("descent produced coefficients not fixed by Frobenius")
    _check_equal_span(raw, big_gens)
    emb = get_embedding(base, big)
    return [g.map_coefficients(emb.down, base) for g in big_gens]


def construct_fermat_system(p, e, n, d):
    """System with big-field generators y_j^d in the Moore coordinates y_j;
    requires the characteristic not to divide d.  Every member with all-nonzero
    big-field coefficients is a diagonal form in the y coordinates."""
    if d < 2:
        raise ValueError("degree must be >= 2")
    if d % p == 0:
        raise ConstructionMismatch(
            "characteristic divides the degree; use the cyclic construction")
    moore = normal_basis_search(p, e, n)
    lin = _moore_linear_forms(moore)
    raw = tuple(l ** d for l in lin)
    descended = galois_descent(raw, moore)
    return ConstructionResult(p=p, e=e, n=n, d=d, case=1, moore=moore,
                              raw_generators=raw, generators=tuple(descended),
                              system=LinearSystemOfForms(descended))


def construct_klein_system(p, e, n, d):
    """System with big-field generators y_i^(d-1) * y_(i+1) in the Moore
    coordinates; requires the characteristic to divide d but not n+1.  Members
    with all-nonzero big-field coefficients are cyclic forms in y."""
    if d < 2:
        raise ValueError("degree must be >= 2")
    if d % p != 0 or (n + 1) % p == 0:
        raise ConstructionMismatch(
            "cyclic construction needs the characteristic to divide d and not n+1")
    moore = normal_basis_search(p, e, n)
    lin = _moore_linear_forms(moore)
    nv = n + 1
    raw = tuple(lin[i] ** (d - 1) * lin[(i + 1) % nv] for i in range(nv))
    descended = galois_descent(raw, moore)
    return ConstructionResult(p=p, e=e, n=n, d=d, case=2, moore=moore,
                              raw_generators=raw, generators=tuple(descended),
                              system=LinearSystemOfForms(descended))


def construct_system_with_details(p, e, n, d, r):
    """Dispatch to the diagonal or cyclic construction and truncate to the
    first r+1 descended generators (any subspace of a K-smooth system is
    K-smooth; taking a prefix keeps the output deterministic)."""
    if n < 1:
        raise ValueError("ambient dimension n must be >= 1")
    if r < 1:
        raise ValueError("projective dimension r must be >= 1")
    if r > n:
        raise RankViolated(
            f"no K-smooth linear system of projective dimension {r} > n = {n} "
            "exists for any degree; the maximum is r = n")
    if d < 2:
        raise ValueError("degree must be >= 2")
    g = gcd(d, n + 1)
    if g % p == 0:
        if p == 2 and d == 2:
            raise HypothesisViolated(
                f"characteristic 2 divides gcd(d, n+1) = {g}: for quadrics with "
                "odd n every system of projective dimension n has a singular "
                "rational member, so no construction can succeed")
        raise HypothesisViolated(
            f"characteristic {p} divides gcd(d, n+1) = {g}; the construction "
            "requires p not to divide gcd(d, n+1)")
    result = (construct_fermat_system(p, e, n, d) if d % p
              else construct_klein_system(p, e, n, d))
    return LinearSystemOfForms(result.generators[:r + 1]), result


def construct_smooth_system(p, e, n, d, r):
    """K-smooth linear system of projective dimension r <= n over GF(p^e)."""
    return construct_system_with_details(p, e, n, d, r)[0]


def lift_to_char_zero(system):
    """Lift a system over a prime field to the rationals by taking the integer
    representative in [0, p) of every coefficient.

    Smoothness of every residue member forces smoothness of the lifted
    members; generator independence is re-checked over the rationals.
    """
    field = system.field
    if not isinstance(field, FieldDescriptor) or field.e != 1:
        raise NotPrimeField("the characteristic-zero lift is implemented for prime fields")
    gens = [g.map_coefficients(lambda c: Fraction(c.coeffs[0]), QQ)
            for g in system.generators]
    return LinearSystemOfForms(gens)


def char2_quadric_singular_point(form):
    """Rational singular point of x0^2 + G(x1, ..., xn) over GF(2^k), n odd.

    The Hessian of G is symmetric with zero diagonal, hence skew-symmetric in
    characteristic 2, and an odd skew-symmetric matrix is singular: a kernel
    vector kills every partial derivative, and t0 = sqrt(G(t)) puts the point
    on the quadric (the field is perfect, so the root is rational).
    """
    field = form.field
    if not isinstance(field, FieldDescriptor) or field.p != 2:
        raise WrongCharacteristic("this construction lives in characteristic 2")
    nv = form.nvars
    n = nv - 1
    if n < 1 or n % 2 == 0:
        raise EvenN(f"needs an odd number of trailing variables, got n = {n}")
    if form.degree != 2:
        raise ShapeViolated("the form must be a quadric")
    one = field.one()
    zero = field.zero()
    x0_square = (2,) + (0,) * n
    g_terms = {}
    saw_x0 = False
    for exps, c in form.terms.items():
        if exps[0]:
            if exps != x0_square or c != one:
                raise ShapeViolated("terms involving x0 must be exactly x0^2")
            saw_x0 = True
        else:
            g_terms[exps] = c
    if not saw_x0:
        raise ShapeViolated("the x0^2 term is missing")
    hessian = [[zero] * n for _ in range(n)]
    for exps, c in g_terms.items():
        nz = [i for i, e in enumerate(exps) if e]
        if len(nz) == 2:
            i, j = nz
            hessian[i - 1][j - 1] = c
            hessian[j - 1][i - 1] = c
    kernel = FieldMatrix(field, hessian).kernel()
    if not kernel:
        raise AssertionError("odd skew-symmetric matrix reported as nonsingular")
    t = kernel[0]
    g = HomogeneousForm(field, nv, 2, g_terms)
    t0 = sqrt_char2(g.evaluate((zero,) + tuple(t)))
    witness = SingularWitness(point=normalize_projective((t0,) + tuple(t)),
                              field=field)
    if not witness_verifies(form, witness):
        raise AssertionError("constructed point failed re-verification")
    return witness


@dataclass(frozen=True)
class SingularMemberResult:
    """A rational singular member of a quadric system, its witness point, and
    which branch produced it: "kernel" when the base-point truncation kills a
    member outright, "preimage" when the member with truncation x0^2 is
    singular by the Hessian argument."""

    coefficients: tuple
    member: HomogeneousForm
    witness: SingularWitness
    branch: str


def char2_find_singular_member(system):
    """Rational singular member of any n-dimensional system of quadrics over
    GF(2^k) with n odd; such a member always exists."""
    field = system.field
    if not isinstance(field, FieldDescriptor) or field.p != 2:
        raise PreconditionViolated("base field of characteristic 2 required")
    if system.degree != 2:
        raise PreconditionViolated("quadric generators required")
    nv = system.nvars
    n = nv - 1
    if n < 1 or n % 2 == 0:
        raise PreconditionViolated(f"odd n required, got n = {n}")
    if len(system.generators) != nv:
        raise PreconditionViolated(
            "projective dimension of the system must equal n")
    zero = field.zero()
    one = field.one()
    monos = []
    for j in range(nv):
        exps = [0] * nv
        exps[0] = 2 if j == 0 else 1
        if j:
            exps[j] += 1
        monos.append(tuple(exps))
    matrix = FieldMatrix(field, [[g.terms.get(m, zero) for g in system.generators]
                                 for m in monos])
    kernel = matrix.kernel()
    if kernel:
        coeffs = kernel[0]
        member = system.member(coeffs)
        witness = SingularWitness(point=(one,) + (zero,) * n, field=field,
                                  member=tuple(coeffs))
        if not witness_verifies(member, witness):
            raise AssertionError("kernel member failed re-verification")
        return SingularMemberResult(tuple(coeffs), member, witness, "kernel")
    coeffs = matrix.solve([one] + [zero] * n)
    member = system.member(coeffs)
    found = char2_quadric_singular_point(member)
    witness = SingularWitness(point=found.point, field=found.field,
                              member=tuple(coeffs))
    return SingularMemberResult(tuple(coeffs), member, witness, "preimage")


def builtin_example_f3():
    """Built-in system of three cubics over GF(3) whose 13 rational members
    all cut out smooth plane curves, even though the characteristic divides
    both the degree and n+1."""
    f3 = get_descriptor(3)

    def form(entries):
        return HomogeneousForm(f3, 3, 3,
                               {exps: f3.from_int(c) for exps, c in entries})

    f0 = form([((3, 0, 0), 1), ((2, 1, 0), 1), ((1, 2, 0), -1), ((0, 3, 0), 1),
               ((2, 0, 1), 1), ((1, 1, 1), 1), ((0, 2, 1), 1), ((1, 0, 2), -1),
               ((0, 0, 3), 1)])
    f1 = form([((3, 0, 0), 1), ((2, 1, 0), 1), ((2, 0, 1), -1), ((1, 1, 1), -1),
               ((0, 2, 1), 1), ((0, 0, 3), 1)])
    f2 = form([((3, 0, 0), 1), ((2, 1, 0), -1), ((1, 2, 0), 1), ((0, 3, 0), 1),
               ((2, 0, 1), 1), ((1, 1, 1), 1), ((0, 2, 1), 1), ((0, 1, 2), -1)])
    return LinearSystemOfForms([f0, f1, f2])


def construction_to_json(result, r=None):
    """System JSON of the (optionally truncated) descended generators plus the
    construction extras: case tag, normal element and Moore determinant."""
    if r is None:
        system = result.system
    else:
        system = LinearSystemOfForms(result.generators[:r + 1])
    obj = system_to_json(system)
    obj["case"] = result.case
    obj["alpha"] = element_to_json(result.moore.alpha)
    obj["moore_det"] = element_to_json(result.moore.det)
    return obj
