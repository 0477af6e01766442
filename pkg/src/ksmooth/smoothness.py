"""Jacobian-criterion smoothness decisions, the base-point truncation map,
and constructive singular-member extraction.

A hypersurface {F = 0} is singular at P exactly when F and all its partial
derivatives vanish at P.  The decision procedure computes a Groebner basis
of [F, dF/dx0, ..., dF/dxn]; an empty projective zero set certifies
smoothness, otherwise an exhaustive search over extension fields produces a
concrete witness point.  F itself always stays among the generators: the
Euler identity makes it redundant only when the characteristic does not
divide the degree.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .errors import PreconditionViolated, WitnessNotFoundWithinCap
from .fields import (
    FieldDescriptor,
    FieldMatrix,
    element_to_json,
    enumerate_projective_points,
    field_to_json,
    get_descriptor,
    get_embedding,
)
from .groebner import GroebnerBasis, buchberger, is_projectively_empty
from .multipoly import HomogeneousForm

DEFAULT_WITNESS_CAP = 6


@dataclass(frozen=True)
class SingularWitness:
    """A projective point (normalized tuple) at which a form is singular,
    together with the field its coordinates live in; `member` carries the
    coefficient tuple when the witness refutes a whole system."""

    point: tuple
    field: object
    member: tuple | None = None


@dataclass(frozen=True)
class Smooth:
    certificate: GroebnerBasis


@dataclass(frozen=True)
class Singular:
    witness: SingularWitness | None


@dataclass(frozen=True)
class SearchInconclusive:
    """A point search exhausted its extension-degree budget; not a proof."""

    max_degree: int


def jacobian_generators(form):
    """[F, dF/dx0, ..., dF/dxn] with identically-zero partials pruned."""
    if not form:
        raise ValueError("zero form has no smoothness question")
    gens = [form]
    for i in range(form.nvars):
        g = form.partial_derivative(i)
        if g:
            gens.append(g)
    return gens


def _term_list(form):
    return [(c, exps) for exps, c in form.terms.items()]


def _eval_terms(terms, point):
    total = None
    for c, exps in terms:
        v = c
        for x, e in zip(point, exps):
            if e:
                v = v * x if e == 1 else v * x ** e
        total = v if total is None else total + v
    return total


def search_singular_point(form, max_ext_degree):
    """Exhaustive scan of P^n over GF(q), GF(q^2), ..., GF(q^m) for a point
    where the form and all its partials vanish.  Returns the first witness
    in enumeration order, or None (which proves nothing)."""
    field = form.field
    if not isinstance(field, FieldDescriptor):
        raise ValueError("the point search requires a finite base field")
    if max_ext_degree < 1:
        raise ValueError("max extension degree must be >= 1")
    partials = [g for g in (form.partial_derivative(i) for i in range(form.nvars)) if g]
    n = form.nvars - 1
    for k in range(1, max_ext_degree + 1):
        if k == 1:
            desc, fk, pk = field, form, partials
        else:
            desc = get_descriptor(field.p, field.e * k)
            emb = get_embedding(field, desc)
            fk = form.embed(emb)
            pk = [g.embed(emb) for g in partials]
        tf = _term_list(fk)
        tps = [_term_list(g) for g in pk]
        for point in enumerate_projective_points(desc, n):
            if _eval_terms(tf, point):
                continue
            if all(not _eval_terms(tp, point) for tp in tps):
                return SingularWitness(point=tuple(point), field=desc)
    return None


def oracle_verdict(form, max_ext_degree):
    """Search-only verdict: Singular with a witness, or SearchInconclusive."""
    w = search_singular_point(form, max_ext_degree)
    return Singular(w) if w is not None else SearchInconclusive(max_ext_degree)


def witness_verifies(form, witness):
    """Re-check a witness by direct evaluation (embedding the form first when
    the witness lives in an extension)."""
    target = witness.field
    g = form
    if isinstance(form.field, FieldDescriptor) and form.field.key != target.key:
        g = form.embed(get_embedding(form.field, target))
    if g.evaluate(witness.point):
        return False
    return all(not g.partial_derivative(i).evaluate(witness.point)
               for i in range(g.nvars))


def is_smooth(form, witness_cap=DEFAULT_WITNESS_CAP):
    """Decide smoothness of the hypersurface cut out by the form.

    Smooth verdicts carry the Groebner certificate; Singular verdicts carry a
    witness found by the extension search (raising the bound up to the cap).
    Disagreement between certificate and search fails loudly instead of
    trusting either side.  Over the rationals a singular verdict carries no
    witness: the refutation is exact but explicit algebraic points are out of
    scope.
    """
    if not form:
        raise ValueError("zero form has no smoothness question")
    basis = buchberger(jacobian_generators(form))
    if is_projectively_empty(basis):
        return Smooth(basis)
    if not isinstance(form.field, FieldDescriptor):
        return Singular(None)
    witness = search_singular_point(form, witness_cap)
    if witness is None:
        raise WitnessNotFoundWithinCap(
            f"certificate says singular but no witness found up to extension degree {witness_cap}")
    return Singular(witness)


def x0_truncation(form):
    """Keep exactly the monomials with x0-exponent >= d-1.

    The result lies in x0^(d-1) times the linear forms, and the kernel of the
    map on degree-d forms is precisely the set of forms singular at the base
    point [1:0:...:0].  For d = 2 it coincides with F - F(0, x1, ..., xn).
    """
    cut = form.degree - 1
    kept = {m: c for m, c in form.terms.items() if m[0] >= cut}
    return HomogeneousForm(form.field, form.nvars, form.degree, kept)


def _truncation_monomials(nvars, degree):
    monos = []
    for j in range(nvars):
        exps = [0] * nvars
        exps[0] = degree if j == 0 else degree - 1
        if j:
            exps[j] += 1
        monos.append(tuple(exps))
    return monos


def singular_member_at_base_point(system):
    """Nonzero member of the system singular at [1:0:...:0].

    Solves the linear condition "truncation of sum a_i F_i vanishes" over the
    base field; a solution is guaranteed once the affine dimension r+1 of the
    system exceeds n+1.  Returns (coefficients, member form).
    """
    nv = system.nvars
    monos = _truncation_monomials(nv, system.degree)
    zero = system.field.zero()
    matrix = FieldMatrix(system.field,
                         [[g.terms.get(m, zero) for g in system.generators]
                          for m in monos])
    kernel = matrix.kernel()
    if not kernel:
        raise PreconditionViolated(
            "no member is singular at the base point; this is guaranteed only "
            "for affine dimension >= n+2")
    coeffs = kernel[0]
    member = system.member(coeffs)
    base = (system.field.one(),) + (zero,) * (nv - 1)
    if member.evaluate(base) or any(
            member.partial_derivative(i).evaluate(base) for i in range(nv)):
        raise AssertionError("extracted member is not singular at the base point")
    return coeffs, member


@dataclass(frozen=True)
class VerifyReport:
    """Outcome of checking every rational member of a linear system."""

    member_count: int
    verdicts: tuple
    k_smooth: bool
    witness: SingularWitness | None

    def to_json(self):
        return {"members": self.member_count,
                "verdicts": list(self.verdicts),
                "k_smooth": self.k_smooth,
                "witness": witness_to_json(self.witness) if self.witness else None}


def witness_to_json(witness):
    return {"point": [element_to_json(x) for x in witness.point],
            "field": field_to_json(witness.field),
            "member": ([element_to_json(a) for a in witness.member]
                       if witness.member is not None else None)}


def verify_system_K_smooth(system, witness_cap=DEFAULT_WITNESS_CAP):
    """Run the smoothness decision on every rational member of the system.

    Members are enumerated as projective coefficient tuples over the base
    field; the report lists one verdict per member in enumeration order and
    carries the first singular witness, if any.
    """
    if not isinstance(system.field, FieldDescriptor):
        raise ValueError("member enumeration requires a finite base field")
    verdicts = []
    first_witness = None
    for coeffs in enumerate_projective_points(system.field, system.dim):
        member = system.member(coeffs)
        verdict = is_smooth(member, witness_cap)
        if isinstance(verdict, Smooth):
            verdicts.append("smooth")
        else:
            verdicts.append("singular")
            if first_witness is None:
                first_witness = replace(verdict.witness, member=tuple(coeffs))
    return VerifyReport(member_count=len(verdicts), verdicts=tuple(verdicts),
                        k_smooth=first_witness is None, witness=first_witness)
