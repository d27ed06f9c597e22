"""De Rham-Witt forms over fractional-exponent (Laurent) monomial rings.

A form is a finite sum of terms ``coeff * prod(atom^e) * dlog-block`` where
atoms are free coordinates drawn from a :class:`RingSpec`, exponents lie in
Z[1/p], and coefficients are exact rationals with p-power denominators
(representatives of p-adic numbers at the working precision).  On top of the
operator calculus (wedge, d, Frobenius, Verschiebung, Teichmueller, dlog)
the module decides membership in the integral lattice E, in the filtration
V^a E + d V^a E, and computes canonical representatives in the quotients
W_a = E / Fil^a.

The lattice predicates work per exponent vector: F, V act diagonally on the
exponent grading and d preserves it, so each graded piece is a finite
lattice problem over Z/p^M solved exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .exactla import (
    hnf_basis,
    in_span_mod_prime_power,
    kernel_mod_prime_power,
    reduce_mod_lattice,
)
from .padic import is_prime, teichmuller_unit, val_p, INFINITE_VALUATION


class DomainError(ValueError):
    """Raised for inputs outside the declared ring (bad exponents, atoms)."""


class NotInLatticeError(ValueError):
    """Raised when a lattice predicate is applied outside its domain."""


# ---------------------------------------------------------------------------
# atoms and ring specification
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class Atom:
    """A free multiplicative coordinate: t_i, t_i - z_b, or z_b - z_c.

    Ordering is lexicographic on (kind, indices); it fixes the sign
    normalization of dlog blocks.
    """

    kind: str  # "t" | "tz" | "zz"
    i: int
    j: int = 0

    def __post_init__(self):
        if self.kind not in ("t", "tz", "zz"):
            raise DomainError(f"unknown atom kind {self.kind!r}")
        if self.kind == "zz" and not self.i < self.j:
            raise DomainError("zz atom needs i < j")

    @property
    def name(self) -> str:
        if self.kind == "t":
            return f"t{self.i}"
        if self.kind == "tz":
            return f"t{self.i}-z{self.j}"
        return f"z{self.i}-z{self.j}"

    @staticmethod
    def parse(name: str) -> "Atom":
        if "-" not in name:
            if not name.startswith("t"):
                raise DomainError(f"cannot parse atom {name!r}")
            return Atom("t", int(name[1:]))
        left, right = name.split("-", 1)
        if left.startswith("t") and right.startswith("z"):
            return Atom("tz", int(left[1:]), int(right[1:]))
        if left.startswith("z") and right.startswith("z"):
            return Atom("zz", int(left[1:]), int(right[1:]))
        raise DomainError(f"cannot parse atom {name!r}")

    def __repr__(self):
        return self.name


class RingSpec:
    """Ambient ring data: prime, working precision, atoms and their flags.

    Non-invertible atoms only admit exponents in N[1/p]; exponent
    denominators of user-supplied forms are capped at p^(precision-1),
    beyond which a term is invisible in W_a at the working precision.
    """

    def __init__(self, p, precision, atoms, invertible=None, positive_only=None):
        if not is_prime(p):
            raise DomainError(f"{p} is not prime")
        if precision < 1:
            raise DomainError("precision must be >= 1")
        atoms = tuple(atoms)
        if len(set(atoms)) != len(atoms):
            raise DomainError("duplicate atoms")
        if invertible is None:
            invertible = tuple(True for _ in atoms)
        if positive_only is None:
            positive_only = tuple(not inv for inv in invertible)
        invertible = tuple(bool(b) for b in invertible)
        positive_only = tuple(bool(b) for b in positive_only)
        for inv, pos in zip(invertible, positive_only):
            if not inv and not pos:
                raise DomainError("non-invertible atoms must be positivity-constrained")
        self.p = p
        self.precision = precision
        self.atoms = atoms
        self.invertible = invertible
        self.positive_only = positive_only
        self._index = {a: i for i, a in enumerate(atoms)}

    @property
    def max_denom_exp(self) -> int:
        return self.precision - 1

    def atom_index(self, atom: Atom) -> int:
        try:
            return self._index[atom]
        except KeyError:
            raise DomainError(f"atom {atom!r} not in ring") from None

    def __eq__(self, other):
        return (
            isinstance(other, RingSpec)
            and (self.p, self.precision, self.atoms, self.invertible, self.positive_only)
            == (other.p, other.precision, other.atoms, other.invertible, other.positive_only)
        )

    def __repr__(self):
        return f"RingSpec(p={self.p}, a={self.precision}, atoms={list(self.atoms)})"

    # common rings -----------------------------------------------------
    @staticmethod
    def polynomial(p, precision, nvars):
        """F_p[t_1..t_n] style: coordinates, no inverses."""
        atoms = [Atom("t", i) for i in range(1, nvars + 1)]
        return RingSpec(p, precision, atoms, invertible=[False] * nvars)

    @staticmethod
    def laurent(p, precision, nvars):
        """F_p[t_i, t_i^-1]: all coordinates invertible."""
        atoms = [Atom("t", i) for i in range(1, nvars + 1)]
        return RingSpec(p, precision, atoms, invertible=[True] * nvars)

    @staticmethod
    def shifted(p, precision, n_points):
        """F_p[t, z_b, (t - z_b)^-1]: one coordinate plus inverted shifts."""
        atoms = [Atom("t", 1)] + [Atom("tz", 1, b) for b in range(1, n_points + 1)]
        return RingSpec(p, precision, atoms, invertible=[False] + [True] * n_points)


# ---------------------------------------------------------------------------
# exponents
# ---------------------------------------------------------------------------

def canon_exp(num: int, k: int, p: int) -> tuple[int, int]:
    """Canonical (numerator, p-power-denominator-exponent) pair."""
    if num == 0:
        return (0, 0)
    while k > 0 and num % p == 0:
        num //= p
        k -= 1
    if k < 0:
        num *= p ** (-k)
        k = 0
    return (num, k)


def exp_value(e: tuple[int, int], p: int) -> Fraction:
    return Fraction(e[0], p ** e[1])


def _scale_exp(e: tuple[int, int], p: int, power: int) -> tuple[int, int]:
    """Multiply the exponent by p**power (power may be negative)."""
    num, k = e
    return canon_exp(num, k - power, p)


# ---------------------------------------------------------------------------
# forms
# ---------------------------------------------------------------------------

def _check_coeff(c, p) -> Fraction:
    c = Fraction(c)
    den = c.denominator
    while den % p == 0:
        den //= p
    if den != 1:
        raise DomainError(f"coefficient {c} has a denominator prime to {p}")
    return c


class DRWForm:
    """Homogeneous degree-m form: dict of (exponent-map, dlog-block) -> coeff.

    Keys: ``exps`` is a sorted tuple of (atom index, (num, k)) with nonzero
    canonical exponents; ``block`` is a strictly increasing tuple of atom
    indices of length m.  Zero coefficients are dropped.
    """

    __slots__ = ("ring", "degree", "terms")

    def __init__(self, ring, degree, terms, check=True, cap=False):
        self.ring = ring
        self.degree = degree
        clean = {}
        for key, c in terms.items():
            c = _check_coeff(c, ring.p) if check else c
            if c == 0:
                continue
            if check:
                exps, block = key
                if len(block) != degree or list(block) != sorted(set(block)):
                    raise DomainError(f"bad block {block}")
                if list(exps) != sorted(exps):
                    raise DomainError("exponent map not sorted")
                for ai, (num, k) in exps:
                    if not (0 <= ai < len(ring.atoms)):
                        raise DomainError("atom index out of range")
                    if canon_exp(num, k, ring.p) != (num, k) or num == 0:
                        raise DomainError(f"non-canonical exponent {(num, k)}")
                    if ring.positive_only[ai] and num < 0:
                        raise DomainError(
                            f"negative exponent on non-invertible atom {ring.atoms[ai]!r}"
                        )
                    if cap and k > ring.max_denom_exp:
                        raise DomainError(
                            f"exponent denominator p^{k} exceeds the cap p^{ring.max_denom_exp}"
                        )
            clean[key] = clean.get(key, Fraction(0)) + c
        self.terms = {k: v for k, v in clean.items() if v != 0}

    # constructors -------------------------------------------------------
    @staticmethod
    def zero(ring, degree=0):
        return DRWForm(ring, degree, {}, check=False)

    @staticmethod
    def from_terms(ring, degree, items):
        """Public constructor: items is a list of (coeff, {atom: Fraction-like}, [atoms]).

        Enforces the exponent-denominator cap; exponents are arbitrary
        elements of Z[1/p] given as Fractions or (num, k) pairs.
        """
        terms = {}
        for coeff, expmap, block_atoms in items:
            exps = []
            for atom, e in expmap.items():
                ai = ring.atom_index(atom)
                if isinstance(e, tuple):
                    num, k = canon_exp(e[0], e[1], ring.p)
                else:
                    e = Fraction(e)
                    if e == 0:
                        continue
                    k = max(0, -val_p(e, ring.p))
                    scaled = e * ring.p ** k
                    if scaled.denominator != 1:
                        raise DomainError(f"exponent {e} is not in Z[1/{ring.p}]")
                    num, k = canon_exp(int(scaled), k, ring.p)
                if num == 0:
                    continue
                exps.append((ai, (num, k)))
            key = (tuple(sorted(exps)), tuple(sorted(ring.atom_index(b) for b in block_atoms)))
            terms[key] = terms.get(key, Fraction(0)) + Fraction(coeff)
        return DRWForm(ring, degree, terms, cap=True)

    @staticmethod
    def constant(ring, c):
        return DRWForm(ring, 0, {((), ()): Fraction(c)})

    # basic structure -----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, DRWForm)
            and self.ring == other.ring
            and self.degree == other.degree
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.degree, tuple(sorted(self.terms.items()))))

    def _same_ring(self, other):
        if self.ring != other.ring:
            raise DomainError("forms over different rings")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = DRWForm.constant(self.ring, other)
        self._same_ring(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise DomainError("cannot add forms of different degrees")
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, Fraction(0)) + c
        return DRWForm(self.ring, self.degree, terms, check=False)

    def __neg__(self):
        return DRWForm(self.ring, self.degree, {k: -c for k, c in self.terms.items()}, check=False)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = _check_coeff(c, self.ring.p)
        return DRWForm(self.ring, self.degree, {k: c * v for k, v in self.terms.items()}, check=False)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def coefficients(self):
        return list(self.terms.values())

    def __repr__(self):
        if self.is_zero():
            return f"DRW(0; deg {self.degree})"
        bits = []
        for (exps, block), c in sorted(self.terms.items()):
            mono = "*".join(
                f"{self.ring.atoms[ai].name}^({num}/{self.ring.p}^{k})" if k else f"{self.ring.atoms[ai].name}^{num}"
                for ai, (num, k) in exps
            )
            blk = "^".join(f"dlog {self.ring.atoms[b].name}" for b in block)
            bits.append(" ".join(x for x in (f"({c})", mono, blk) if x))
        return " + ".join(bits)


def _merge_blocks(b1, b2):
    """Concatenate two increasing blocks; None if an atom repeats.

    The sign counts the transpositions needed to interleave b2 past b1.
    """
    if set(b1) & set(b2):
        return None
    inv = 0
    for x in b1:
        for y in b2:
            if y < x:
                inv += 1
    merged = tuple(sorted(b1 + b2))
    return ((-1) ** inv, merged)


def _add_exps(e1, e2, p):
    out = dict(e1)
    for ai, (num, k) in e2:
        if ai in out:
            cur = exp_value(out[ai], p) + exp_value((num, k), p)
            if cur == 0:
                del out[ai]
                continue
            kk = max(0, -val_p(cur, p))
            out[ai] = canon_exp(int(cur * p ** kk), kk, p)
        else:
            out[ai] = (num, k)
    return tuple(sorted(out.items()))


def multiply(x: DRWForm, y: DRWForm) -> DRWForm:
    """Graded-commutative wedge product."""
    x._same_ring(y)
    p = x.ring.p
    terms = {}
    for (e1, b1), c1 in x.terms.items():
        for (e2, b2), c2 in y.terms.items():
            mb = _merge_blocks(b1, b2)
            if mb is None:
                continue
            sign, block = mb
            key = (_add_exps(e1, e2, p), block)
            terms[key] = terms.get(key, Fraction(0)) + sign * c1 * c2
    return DRWForm(x.ring, x.degree + y.degree, terms)


def differential(x: DRWForm) -> DRWForm:
    """Exterior differential in the dlog basis: d(c t^I w_B) =
    c * sum_k i_k t^I dlog(atom_k) ^ w_B.  Exact; coefficients may leave Z_p.
    """
    ring = x.ring
    p = ring.p
    terms = {}
    for (exps, block), c in x.terms.items():
        bs = set(block)
        for ai, (num, k) in exps:
            if ai in bs:
                continue
            pos = sum(1 for b in block if b < ai)
            sign = (-1) ** pos
            newblock = tuple(sorted(block + (ai,)))
            key = (exps, newblock)
            terms[key] = terms.get(key, Fraction(0)) + sign * c * Fraction(num, p ** k)
    return DRWForm(ring, x.degree + 1, terms, check=False)


def frobenius(x: DRWForm) -> DRWForm:
    """F: atom^e -> atom^(p e); fixes dlog blocks and coefficients."""
    p = x.ring.p
    terms = {}
    for (exps, block), c in x.terms.items():
        newexps = tuple(sorted((ai, _scale_exp(e, p, 1)) for ai, e in exps))
        key = (newexps, block)
        terms[key] = terms.get(key, Fraction(0)) + c
    return DRWForm(x.ring, x.degree, terms, check=False)


def frobenius_inverse(x: DRWForm) -> DRWForm:
    p = x.ring.p
    terms = {}
    for (exps, block), c in x.terms.items():
        newexps = tuple(sorted((ai, _scale_exp(e, p, -1)) for ai, e in exps))
        key = (newexps, block)
        terms[key] = terms.get(key, Fraction(0)) + c
    return DRWForm(x.ring, x.degree, terms, check=False)


def verschiebung(x: DRWForm) -> DRWForm:
    """V = p F^-1: multiplies coefficients by p, divides exponents by p."""
    return frobenius_inverse(x).scale(x.ring.p)


def is_f_fixed(x: DRWForm) -> bool:
    return frobenius(x) == x


def teichmuller(ring: RingSpec, monomial: dict, scalar: int = 1) -> DRWForm:
    """Teichmueller lift of ``scalar * prod(atom^e)`` with integer exponents.

    Multiplicative modulo p^precision: the unit part is the iterated-p-th-
    power representative, so products of lifts agree with lifts of products
    after reduction at the working precision.
    """
    exps = []
    for atom, e in monomial.items():
        ai = ring.atom_index(atom)
        if not isinstance(e, int):
            if isinstance(e, Fraction) and e.denominator == 1:
                e = int(e)
            else:
                raise DomainError(f"Teichmueller needs integer exponents, got {e!r}")
        if e < 0 and not ring.invertible[ai]:
            raise DomainError(f"negative exponent on non-invertible atom {atom!r}")
        if e != 0:
            exps.append((ai, (e, 0)))
    unit = teichmuller_unit(scalar, ring.p, ring.precision)
    return DRWForm(ring, 0, {(tuple(sorted(exps)), ()): Fraction(unit)})


def dlog_atom(ring: RingSpec, atom: Atom) -> DRWForm:
    """The closed, F-fixed 1-form dlog(atom) = d(lift)/lift."""
    ai = ring.atom_index(atom)
    if not ring.invertible[ai]:
        raise DomainError(f"dlog of non-invertible atom {atom!r}")
    return DRWForm(ring, 1, {((), (ai,)): Fraction(1)})


def dlog_block(ring: RingSpec, atoms) -> DRWForm:
    out = DRWForm.constant(ring, 1)
    for a in atoms:
        out = multiply(out, dlog_atom(ring, a))
    return out


# ---------------------------------------------------------------------------
# integral lattice E, filtration, W_a quotients
# ---------------------------------------------------------------------------

def _coeff_integral(x: DRWForm) -> bool:
    p = x.ring.p
    for c in x.terms.values():
        v = val_p(c, p)
        if v is not INFINITE_VALUATION and v < 0:
            return False
    return True


def is_in_E(x: DRWForm) -> bool:
    """x and dx integral: membership in the de Rham-Witt lattice E."""
    return _coeff_integral(x) and _coeff_integral(differential(x))


def _graded_pieces(x: DRWForm):
    pieces = {}
    for (exps, block), c in x.terms.items():
        pieces.setdefault(exps, {})[block] = c
    return pieces


def _dmax(exps) -> int:
    return max((k for _ai, (_num, k) in exps), default=0)


def _e_lattice_gens(ring, m, exps):
    """Generators of the E^m coefficient lattice in the graded piece ``exps``.

    The lattice lives in Z^{C(r,m)} indexed by dlog blocks; the constraints
    are integrality of the d-image, i.e. linear congruences mod p^kexp where
    kexp is the exponent-denominator depth of the piece.
    """
    r = len(ring.atoms)
    p = ring.p
    blocks = list(combinations(range(r), m))
    pos = {b: i for i, b in enumerate(blocks)}
    kexp = _dmax(exps)
    if kexp == 0 or m == r:
        gens = [[1 if i == j else 0 for j in range(len(blocks))] for i in range(len(blocks))]
        return gens, blocks
    emap = dict(exps)
    rows = []
    for D in combinations(range(r), m + 1):
        row = [0] * len(blocks)
        nonzero = False
        for idx, ai in enumerate(D):
            if ai not in emap:
                continue
            num, k = emap[ai]
            B = tuple(a for a in D if a != ai)
            row[pos[B]] += (-1) ** idx * num * p ** (kexp - k)
            nonzero = True
        if nonzero:
            rows.append(row)
    if not rows:
        gens = [[1 if i == j else 0 for j in range(len(blocks))] for i in range(len(blocks))]
        return gens, blocks
    return kernel_mod_prime_power(rows, p, kexp), blocks


def _fil_lattice(ring, m, exps, a1):
    """Generators of the Fil^a1 = V^a1 E + d V^a1 E coefficient lattice in the
    graded piece ``exps`` of degree m, plus the working modulus exponent M.

    V^a1 identifies the piece with the piece at exponents scaled by p^a1
    and multiplies coefficients by p^a1; d о V^a1 lands here from degree
    m-1 with the scaled exponents as multipliers.
    """
    p = ring.p
    J = tuple(sorted((ai, _scale_exp(e, p, a1)) for ai, e in exps))
    jmap = dict(J)
    M = max(a1, _dmax(exps))
    q = p ** M
    gens_m, blocks = _e_lattice_gens(ring, m, J)
    gens = [[(p ** a1 * x) % q for x in g] for g in gens_m]
    if m >= 1:
        gens_m1, blocks_m1 = _e_lattice_gens(ring, m - 1, J)
        pos_m1 = {b: i for i, b in enumerate(blocks_m1)}
        for g in gens_m1:
            img = []
            for D in blocks:
                s = Fraction(0)
                for idx, ai in enumerate(D):
                    if ai not in jmap:
                        continue
                    num, k = jmap[ai]
                    B = tuple(a for a in D if a != ai)
                    s += (-1) ** idx * Fraction(num, p ** k) * g[pos_m1[B]]
                if s.denominator != 1:
                    raise AssertionError("dV image of an E-lattice vector must be integral")
                img.append(int(s) % q)
            if any(img):
                gens.append(img)
    n = len(blocks)
    for i in range(n):
        gens.append([q if j == i else 0 for j in range(n)])
    return gens, blocks, M


def _piece_target(blockdict, blocks):
    target = []
    for B in blocks:
        c = blockdict.get(B, Fraction(0))
        if c.denominator != 1:
            raise NotInLatticeError("form has non-integral coefficients")
        target.append(int(c))
    return target


def fil_membership(x: DRWForm, a1: int) -> bool:
    """Exact membership in Fil^a1 E = V^a1 E + d(V^a1 E)."""
    ring = x.ring
    if not (1 <= a1 <= ring.precision):
        raise DomainError(f"filtration level must be in 1..{ring.precision}")
    if not is_in_E(x):
        raise NotInLatticeError("fil_membership requires an E-form")
    for exps, blockdict in _graded_pieces(x).items():
        gens, blocks, M = _fil_lattice(ring, x.degree, exps, a1)
        target = _piece_target(blockdict, blocks)
        if not in_span_mod_prime_power(gens, target, ring.p, M):
            return False
    return True


def wa_normal_form(x: DRWForm, a1: int) -> DRWForm:
    """Canonical representative of ``x + Fil^a1`` in W_a1 = E/Fil^a1.

    Within each graded piece the representative is the Hermite-reduced
    vector modulo the Fil lattice; two E-forms have equal normal forms iff
    their difference passes :func:`fil_membership`.
    """
    ring = x.ring
    if not (1 <= a1 <= ring.precision):
        raise DomainError(f"filtration level must be in 1..{ring.precision}")
    if not is_in_E(x):
        raise NotInLatticeError("wa_normal_form requires an E-form")
    terms = {}
    for exps, blockdict in _graded_pieces(x).items():
        gens, blocks, M = _fil_lattice(ring, x.degree, exps, a1)
        target = _piece_target(blockdict, blocks)
        basis = hnf_basis(gens, len(blocks))
        red = reduce_mod_lattice(basis, target)
        for B, c in zip(blocks, red):
            if c:
                terms[(exps, B)] = Fraction(c)
    return DRWForm(ring, x.degree, terms, check=False)


# ---------------------------------------------------------------------------
# random generators for the verification suites
# ---------------------------------------------------------------------------

def random_e_form(ring: RingSpec, rng, degree=None, max_terms=4, max_num=3, max_denom_exp=None):
    """Seeded random element of E: each term gets coefficient valuation at
    least the exponent-denominator depth, which makes the term and its
    differential integral."""
    r = len(ring.atoms)
    if degree is None:
        degree = rng.randrange(0, r + 1)
    if max_denom_exp is None:
        max_denom_exp = max(ring.max_denom_exp - 1, 0)
    terms = {}
    for _ in range(rng.randrange(1, max_terms + 1)):
        block = tuple(sorted(rng.sample(range(r), degree)))
        exps = []
        for ai in range(r):
            if rng.random() < 0.5:
                continue
            k = rng.randrange(0, max_denom_exp + 1)
            lo = 0 if ring.positive_only[ai] else -max_num
            num = rng.randrange(lo, max_num + 1)
            num, k = canon_exp(num, k, ring.p)
            if num:
                exps.append((ai, (num, k)))
        exps = tuple(sorted(exps))
        depth = _dmax(exps)
        unit = rng.randrange(1, ring.p ** ring.precision)
        coeff = Fraction(ring.p ** depth * unit)
        key = (exps, block)
        terms[key] = terms.get(key, Fraction(0)) + coeff
    return DRWForm(ring, degree, terms)


def random_f_fixed_form(ring: RingSpec, rng, degree=None):
    """Random integer combination of dlog blocks: the F-fixed forms of the
    finite-support model."""
    inv = [i for i in range(len(ring.atoms)) if ring.invertible[i]]
    if degree is None:
        degree = rng.randrange(0, len(inv) + 1)
    terms = {}
    for block in combinations(inv, degree):
        c = rng.randrange(-ring.p ** ring.precision, ring.p ** ring.precision)
        if c:
            terms[((), tuple(block))] = Fraction(c)
    return DRWForm(ring, degree, terms)


# ---------------------------------------------------------------------------
# JSON serialization
# ---------------------------------------------------------------------------

def _frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def form_to_json(x: DRWForm) -> dict:
    terms = []
    for (exps, block), c in sorted(x.terms.items()):
        terms.append(
            {
                "coeff": _frac_str(c),
                "exps": {
                    x.ring.atoms[ai].name: _frac_str(exp_value(e, x.ring.p)) for ai, e in exps
                },
                "block": [x.ring.atoms[b].name for b in block],
            }
        )
    return {"degree": x.degree, "terms": terms}


def form_from_json(ring: RingSpec, data: dict) -> DRWForm:
    items = []
    for t in data["terms"]:
        expmap = {Atom.parse(name): Fraction(s) for name, s in t["exps"].items()}
        block = [Atom.parse(name) for name in t["block"]]
        items.append((Fraction(t["coeff"]), expmap, block))
    if not items:
        return DRWForm.zero(ring, data.get("degree", 0))
    form = DRWForm.from_terms(ring, data["degree"], items)
    if form.degree != data["degree"] and form.terms:
        raise DomainError("degree mismatch in serialized form")
    return form


def ring_to_json(ring: RingSpec) -> dict:
    return {
        "p": ring.p,
        "precision": ring.precision,
        "atoms": [
            {"name": a.name, "invertible": inv, "positive_only": pos}
            for a, inv, pos in zip(ring.atoms, ring.invertible, ring.positive_only)
        ],
    }


def ring_from_json(data: dict) -> RingSpec:
    atoms = [Atom.parse(a["name"]) for a in data["atoms"]]
    return RingSpec(
        data["p"],
        data["precision"],
        atoms,
        invertible=[a.get("invertible", True) for a in data["atoms"]],
        positive_only=[a.get("positive_only", not a.get("invertible", True)) for a in data["atoms"]],
    )
