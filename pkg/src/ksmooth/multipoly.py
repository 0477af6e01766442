"""Sparse homogeneous multivariate forms over a declared coefficient field.

Forms are immutable values: a term map from exponent vectors to nonzero
coefficients, together with the field, the variable count and the degree.
The monomial order is degrevlex with x0 > x1 > ... > xn everywhere; the
Groebner engine shares the same key so certificates never disagree about
leading terms.
"""

from __future__ import annotations

from .errors import (
    DegreeMismatch,
    DependentGenerators,
    DescriptorMismatch,
)
from .fields import (
    FieldDescriptor,
    FieldMatrix,
    element_from_json,
    element_to_json,
    field_from_json,
    field_to_json,
    frobenius,
)


def monomial_key(exps):
    """Sort key realizing degrevlex with x0 > x1 > ... > xn."""
    return (sum(exps), tuple(-e for e in reversed(exps)))


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for head in range(total, -1, -1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


def monomials_of_degree(nvars, degree):
    """All exponent vectors of the given total degree, leading one first."""
    return sorted(_compositions(degree, nvars), key=monomial_key, reverse=True)


class HomogeneousForm:
    """Homogeneous polynomial of fixed degree in nvars variables."""

    __slots__ = ("field", "nvars", "degree", "terms")

    def __init__(self, field, nvars, degree, terms=None):
        if nvars < 1:
            raise ValueError("need at least one variable")
        if degree < 0:
            raise ValueError("degree must be >= 0")
        self.field = field
        self.nvars = nvars
        self.degree = degree
        clean = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for exps, c in items:
                exps = tuple(int(v) for v in exps)
                if len(exps) != nvars or any(v < 0 for v in exps):
                    raise ValueError(f"bad exponent vector {exps}")
                if sum(exps) != degree:
                    raise DegreeMismatch(
                        f"term {exps} has degree {sum(exps)}, form has degree {degree}")
                cur = clean.get(exps)
                v = c if cur is None else cur + c
                if v:
                    clean[exps] = v
                elif cur is not None:
                    del clean[exps]
        self.terms = clean

    @classmethod
    def zero(cls, field, nvars, degree):
        return cls(field, nvars, degree)

    @classmethod
    def monomial(cls, field, nvars, exps, coeff=None):
        if coeff is None:
            coeff = field.one()
        return cls(field, nvars, sum(exps), {tuple(exps): coeff})

    # -- structure ---------------------------------------------------------

    def _check(self, other, same_degree=False):
        if self.field != other.field:
            raise DescriptorMismatch(f"{self.field!r} vs {other.field!r}")
        if self.nvars != other.nvars:
            raise DescriptorMismatch("different variable counts")
        if same_degree and self.degree != other.degree:
            raise DegreeMismatch(f"degree {self.degree} vs {other.degree}")

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, HomogeneousForm):
            return NotImplemented
        return (self.field == other.field and self.nvars == other.nvars
                and self.degree == other.degree and self.terms == other.terms)

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), self.field.zero())

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        self._check(other, same_degree=True)
        out = dict(self.terms)
        for m, c in other.terms.items():
            cur = out.get(m)
            if cur is None:
                out[m] = c
            else:
                v = cur + c
                if v:
                    out[m] = v
                else:
                    del out[m]
        f = HomogeneousForm.__new__(HomogeneousForm)
        f.field, f.nvars, f.degree, f.terms = self.field, self.nvars, self.degree, out
        return f

    def __neg__(self):
        out = {m: -c for m, c in self.terms.items()}
        f = HomogeneousForm.__new__(HomogeneousForm)
        f.field, f.nvars, f.degree, f.terms = self.field, self.nvars, self.degree, out
        return f

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        if not s:
            return HomogeneousForm.zero(self.field, self.nvars, self.degree)
        out = {m: c * s for m, c in self.terms.items()}
        f = HomogeneousForm.__new__(HomogeneousForm)
        f.field, f.nvars, f.degree, f.terms = self.field, self.nvars, self.degree, out
        return f

    def __mul__(self, other):
        self._check(other)
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = c1 * c2
                cur = out.get(m)
                if cur is not None:
                    v = cur + v
                if v:
                    out[m] = v
                elif cur is not None:
                    del out[m]
        f = HomogeneousForm.__new__(HomogeneousForm)
        f.field, f.nvars, f.terms = self.field, self.nvars, out
        f.degree = self.degree + other.degree
        return f

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative powers of forms are not defined")
        out = HomogeneousForm(self.field, self.nvars, 0,
                              {(0,) * self.nvars: self.field.one()})
        for _ in range(k):
            out = out * self
        return out

    def partial_derivative(self, i):
        """Formal partial derivative; terms whose exponent is divisible by
        the characteristic vanish."""
        if not 0 <= i < self.nvars:
            raise ValueError("variable index out of range")
        from_int = self.field.from_int
        out = {}
        for exps, c in self.terms.items():
            e = exps[i]
            if e:
                v = c * from_int(e)
                if v:
                    out[exps[:i] + (e - 1,) + exps[i + 1:]] = v
        f = HomogeneousForm.__new__(HomogeneousForm)
        f.field, f.nvars, f.terms = self.field, self.nvars, out
        f.degree = max(self.degree - 1, 0)
        return f

    def evaluate(self, point):
        """Exact value at a coordinate tuple over the form's own field."""
        point = tuple(point)
        if len(point) != self.nvars:
            raise ValueError("point has the wrong number of coordinates")
        total = self.field.zero()
        for exps, c in self.terms.items():
            v = c
            for x, e in zip(point, exps):
                if e:
                    v = v * x if e == 1 else v * x ** e
            total = total + v
        return total

    def substitute_linear(self, matrix):
        """Replace x_i by the linear form given by row i of the matrix."""
        rows = matrix.rows if isinstance(matrix, FieldMatrix) else [list(r) for r in matrix]
        if len(rows) != self.nvars or any(len(r) != self.nvars for r in rows):
            raise ValueError("substitution matrix must be square of size nvars")
        if self.degree == 0:
            return self
        lin = []
        for r in rows:
            t = {}
            for j, c in enumerate(r):
                if c:
                    t[tuple(1 if k == j else 0 for k in range(self.nvars))] = c
            lin.append(HomogeneousForm(self.field, self.nvars, 1, t))
        cache = {}

        def lpow(i, k):
            got = cache.get((i, k))
            if got is None:
                got = lin[i] ** k
                cache[(i, k)] = got
            return got

        out = HomogeneousForm.zero(self.field, self.nvars, self.degree)
        for exps, c in self.terms.items():
            part = None
            for i, e in enumerate(exps):
                if e:
                    part = lpow(i, e) if part is None else part * lpow(i, e)
            out = out + part.scale(c)
        return out

    def map_coefficients(self, func, field):
        """New form over `field` with every coefficient passed through func."""
        out = {}
        for m, c in self.terms.items():
            v = func(c)
            if v:
                out[m] = v
        return HomogeneousForm(field, self.nvars, self.degree, out)

    def embed(self, embedding):
        return self.map_coefficients(embedding.up, embedding.big)

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for exps in sorted(self.terms, key=monomial_key, reverse=True):
            c = self.terms[exps]
            mono = "*".join(f"x{i}^{e}" if e > 1 else f"x{i}"
                            for i, e in enumerate(exps) if e)
            cs = str(c)
            if not mono:
                bits.append(cs)
            elif cs == "1":
                bits.append(mono)
            elif any(ch in cs for ch in "+-/"):
                bits.append(f"({cs})*{mono}")
            else:
                bits.append(f"{cs}*{mono}")
        return " + ".join(bits)

    def __repr__(self):
        return f"<form deg {self.degree} over {self.field!r}: {self}>"


def coefficients_fixed_by_frobenius(form, k):
    """True iff every coefficient satisfies c^(p^k) = c, i.e. lies in the
    subfield GF(p^k)."""
    field = form.field
    if not isinstance(field, FieldDescriptor):
        raise DescriptorMismatch("Frobenius fixedness is a finite-field notion")
    if k < 1 or field.e % k:
        raise ValueError("k must divide the extension degree")
    return all(frobenius(c, k) == c for c in form.terms.values())


def frobenius_twist(form, k):
    """Apply x -> x^(p^k) to every coefficient."""
    return form.map_coefficients(lambda c: frobenius(c, k), form.field)


def euler_combination(form):
    """Sum of x_i * df/dx_i, built from the derivative and product operations
    (so it exercises their interplay; equals (d mod p) * f)."""
    if form.degree == 0:
        return HomogeneousForm.zero(form.field, form.nvars, 0)
    out = HomogeneousForm.zero(form.field, form.nvars, form.degree)
    for i in range(form.nvars):
        xi = HomogeneousForm.monomial(
            form.field, form.nvars, tuple(1 if k == i else 0 for k in range(form.nvars)))
        out = out + xi * form.partial_derivative(i)
    return out


class LinearSystemOfForms:
    """Linear system spanned by r+1 independent homogeneous generators."""

    __slots__ = ("field", "nvars", "degree", "generators")

    def __init__(self, generators):
        gens = tuple(generators)
        if not gens:
            raise ValueError("at least one generator required")
        first = gens[0]
        for g in gens[1:]:
            first._check(g, same_degree=True)
        if any(not g for g in gens):
            raise DependentGenerators("zero generator")
        self.field = first.field
        self.nvars = first.nvars
        self.degree = first.degree
        self.generators = gens
        mat, _ = self.coefficient_matrix()
        if mat.rank() != len(gens):
            raise DependentGenerators("generators are linearly dependent")

    @property
    def dim(self):
        """Projective dimension r (one less than the generator count)."""
        return len(self.generators) - 1

    def member(self, coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) != len(self.generators):
            raise ValueError("one coefficient per generator required")
        out = HomogeneousForm.zero(self.field, self.nvars, self.degree)
        for a, g in zip(coeffs, self.generators):
            if a:
                out = out + g.scale(a)
        return out

    def coefficient_matrix(self, monomials=None):
        """Matrix whose rows are the generators' coefficient vectors."""
        monos = monomials if monomials is not None else monomials_of_degree(
            self.nvars, self.degree)
        zero = self.field.zero()
        rows = [[g.terms.get(m, zero) for m in monos] for g in self.generators]
        return FieldMatrix(self.field, rows), monos

    def __repr__(self):
        return (f"<system of {len(self.generators)} forms, deg {self.degree}, "
                f"P^{self.nvars - 1} over {self.field!r}>")


def random_element(field, rng):
    return field.element_from_index(rng.randrange(field.order))


def random_form(field, nvars, degree, rng):
    """Uniformly random nonzero form (coefficients independent per monomial)."""
    monos = monomials_of_degree(nvars, degree)
    while True:
        terms = {m: random_element(field, rng) for m in monos}
        f = HomogeneousForm(field, nvars, degree, terms)
        if f:
            return f


def random_system(field, nvars, degree, count, rng, max_tries=10000):
    """Random linear system with `count` independent generators."""
    gens = []
    for _ in range(max_tries):
        cand = random_form(field, nvars, degree, rng)
        try:
            system = LinearSystemOfForms(gens + [cand])
        except DependentGenerators:
            continue
        gens.append(cand)
        if len(gens) == count:
            return system
    raise RuntimeError("could not sample an independent system")


# -- JSON wire format --------------------------------------------------------

def form_to_json(form):
    terms = [{"exps": list(exps), "coeff": element_to_json(form.terms[exps])}
             for exps in sorted(form.terms, key=monomial_key, reverse=True)]
    return {"field": field_to_json(form.field), "nvars": form.nvars,
            "degree": form.degree, "terms": terms}


def form_from_json(obj):
    field = field_from_json(obj["field"])
    terms = [(tuple(t["exps"]), element_from_json(field, t["coeff"]))
             for t in obj["terms"]]
    return HomogeneousForm(field, int(obj["nvars"]), int(obj["degree"]), terms)


def system_to_json(system):
    return {"field": field_to_json(system.field), "nvars": system.nvars,
            "degree": system.degree,
            "generators": [form_to_json(g) for g in system.generators]}


def system_from_json(obj):
    gens = [form_from_json(g) for g in obj["generators"]]
    system = LinearSystemOfForms(gens)
    if (system.nvars != int(obj["nvars"]) or system.degree != int(obj["degree"])
            or field_to_json(system.field) != obj["field"]):
        raise ValueError("system header disagrees with its generators")
    return system
