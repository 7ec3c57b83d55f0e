"""S_n-characters of codimension quotients and their irreducible multiplicities."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .algebra import Algebra, is_ideal, nilpotency_index
from .codimension import GRADED, OPERATOR, evaluation_row_space, regime_of
from .errors import InconsistencyError, ValidationError
from .structures import is_invariant_subspace
from .subspace import Subspace

DEFAULT_MAX_N = 7


def partitions(n: int, max_part: int | None = None) -> list[tuple[int, ...]]:
    """Partitions of n as weakly decreasing tuples, in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        return [()]
    out = []
    for k in range(min(n, max_part), 0, -1):
        out.extend((k,) + rest for rest in partitions(n - k, k))
    return out


def class_size(mu) -> int:
    """Number of permutations of cycle type mu."""
    z = 1
    for part, mult in Counter(mu).items():
        z *= part ** mult * factorial(mult)
    return factorial(sum(mu)) // z


def hook_length_dimension(lam) -> int:
    """f^lambda by the hook length formula."""
    n = sum(lam)
    conj = [sum(1 for r in lam if r > j) for j in range(lam[0])] if lam else []
    prod = 1
    for i, row in enumerate(lam):
        for j in range(row):
            prod *= (row - j - 1) + (conj[j] - i - 1) + 1
    return factorial(n) // prod


@lru_cache(maxsize=None)
def _mn(beta: tuple, mu: tuple) -> int:
    """Murnaghan-Nakayama on a beta-set: strip rim hooks of lengths mu[0], mu[1], ..."""
    if not mu:
        return 1
    r, rest = mu[0], mu[1:]
    bset = set(beta)
    total = 0
    for b in beta:
        if b - r < 0 or (b - r) in bset:
            continue
        # rim hook height = number of beads jumped over
        sign = -1 if sum(1 for c in beta if b - r < c < b) % 2 else 1
        nb = tuple(sorted((bset - {b}) | {b - r}, reverse=True))
        total += sign * _mn(nb, rest)
    return total


def irreducible_character(lam, mu) -> int:
    """chi^lambda evaluated at the class of cycle type mu."""
    if sum(lam) != sum(mu):
        raise ValueError("lambda and mu must partition the same n")
    s = len(lam)
    beta = tuple(lam[i] + (s - 1 - i) for i in range(s))
    return _mn(beta, tuple(sorted(mu, reverse=True)))


def character_table(n: int) -> dict:
    parts = partitions(n)
    return {lam: {mu: irreducible_character(lam, mu) for mu in parts} for lam in parts}


def representative(mu) -> tuple[int, ...]:
    """Canonical permutation (as images of 0..n-1) of cycle type mu.

    Cycles are taken in increasing length on consecutive blocks of points.
    """
    perm = []
    start = 0
    for length in sorted(mu):
        block = list(range(start, start + length))
        perm.extend(block[1:] + block[:1])
        start += length
    return tuple(perm)


def cycle_type(perm) -> tuple[int, ...]:
    seen = set()
    out = []
    for i in range(len(perm)):
        if i in seen:
            continue
        k, j = 0, i
        while j not in seen:
            seen.add(j)
            j = perm[j]
            k += 1
        out.append(k)
    return tuple(sorted(out, reverse=True))


def _to_rational(x) -> Fraction:
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if hasattr(x, "is_rational") and x.is_rational():
        return Fraction(x.c[0])
    raise InconsistencyError(f"character value {x} is not rational")


@dataclass
class CocharacterReport:
    n: int
    class_character: dict
    multiplicities: dict = dc_field(default_factory=dict)
    codim: int = 0

    def to_json(self) -> dict:
        key = lambda p: "(" + ",".join(map(str, p)) + ")"
        return {
            "n": self.n, "codim": self.codim,
            "class_character": {key(mu): str(v) for mu, v in self.class_character.items()},
            "multiplicities": {key(lam): m for lam, m in self.multiplicities.items()},
        }


def _check_n(n: int, max_n: int | None):
    cap = DEFAULT_MAX_N if max_n is None else max_n
    if n < 1:
        raise ValidationError("n must be a positive integer")
    if n > cap:
        raise ValidationError(f"cocharacter degree {n} exceeds the cap {cap}")


def quotient_character(A: Algebra, s=None, n: int = 1, limit: int | None = None,
                       max_n: int | None = None, perms=None) -> dict:
    """Trace of each cycle-type representative on the codimension quotient.

    Substituting x_i -> x_{tau(i)} moves the evaluation column (b_1..b_n, k) to
    (b_tau(1)..b_tau(n), k), so the quotient (the row space of the evaluation matrix) is
    permuted by a column permutation; its trace on an RREF basis w_i with pivots p_i is
    sum_i (tau w_i)[p_i].  ``perms`` overrides the representatives (cycle type -> permutation).
    """
    _check_n(n, max_n)
    regime = regime_of(s)
    rs = evaluation_row_space(A, s, n, OPERATOR if regime == GRADED else regime, limit)
    rows = rs.echelon.rref()
    d = A.dim
    chars = {}
    for mu in partitions(n):
        tau = perms[mu] if perms and mu in perms else representative(mu)
        if cycle_type(tau) != mu:
            raise ValueError(f"permutation {tau} does not have cycle type {mu}")
        tr = Fraction(0)
        for pivot, w in rows:
            # decode pivot -> (b_1..b_n, k), then look up w at (b_tau(1)..b_tau(n), k)
            k = pivot % d
            rest = pivot // d
            b = [0] * n
            for i in range(n - 1, -1, -1):
                b[i] = rest % d
                rest //= d
            src = 0
            for i in range(n):
                src = src * d + b[tau[i]]
            v = w.get(src * d + k)
            if v:
                tr = tr + v
        chars[mu] = _to_rational(tr)
    return chars


def irreducible_multiplicities(class_character: dict, n: int) -> dict:
    """m(lambda) = <character, chi^lambda>, asserted to be nonnegative integers."""
    total = factorial(n)
    out = {}
    for lam in partitions(n):
        acc = Fraction(0)
        for mu in partitions(n):
            acc += class_size(mu) * Fraction(class_character[mu]) * irreducible_character(lam, mu)
        m = acc / total
        if m.denominator != 1 or m < 0:
            raise InconsistencyError(f"multiplicity of {lam} is {m}, not a nonnegative integer")
        out[lam] = int(m)
    return out


def cocharacter(A: Algebra, s=None, n: int = 1, limit: int | None = None,
                max_n: int | None = None) -> CocharacterReport:
    chars = quotient_character(A, s, n, limit, max_n)
    mult = irreducible_multiplicities(chars, n)
    dim = int(chars[(1,) * n])
    if sum(m * hook_length_dimension(lam) for lam, m in mult.items()) != dim:
        raise InconsistencyError("multiplicities do not add up to the codimension")
    return CocharacterReport(n, chars, mult, dim)


@dataclass
class VanishingReport:
    n: int
    ideal_dim: int
    nilpotency_index: int
    triggered: dict  # partition -> multiplicity (all zero when the check passes)
    unchecked: list

    @property
    def ok(self) -> bool:
        return all(m == 0 for m in self.triggered.values())

    def to_json(self) -> dict:
        key = lambda p: "(" + ",".join(map(str, p)) + ")"
        return {"n": self.n, "ideal_dim": self.ideal_dim, "nilpotency_index": self.nilpotency_index,
                "ok": self.ok, "triggered": {key(k): v for k, v in self.triggered.items()},
                "unchecked": [key(p) for p in self.unchecked]}


def vanishing_triggered(lam, q: int, p: int) -> bool:
    """Whether rows q+1, q+2, ... of lambda hold at least p boxes."""
    return sum(lam[q:]) >= p


def cocharacter_vanishing_check(A: Algebra, s, I: Subspace, n: int, limit: int | None = None,
                                max_n: int | None = None) -> VanishingReport:
    """Multiplicities of all lambda with sum_{k > dim A - dim I} lambda_k >= p must vanish."""
    if not is_ideal(A, I):
        raise ValidationError("I is not an ideal")
    if s is not None and not is_invariant_subspace(s, I):
        raise ValidationError("I is not invariant under the structure")
    p = nilpotency_index(A, I)
    if p is None:
        raise ValidationError("I is not nilpotent")
    q = A.dim - I.dim
    mult = cocharacter(A, s, n, limit, max_n).multiplicities
    triggered, unchecked = {}, []
    for lam in partitions(n):
        if vanishing_triggered(lam, q, p):
            triggered[lam] = mult[lam]
        else:
            unchecked.append(lam)
    rep = VanishingReport(n, I.dim, p, triggered, unchecked)
    if not rep.ok:
        bad = [lam for lam, m in triggered.items() if m]
        raise InconsistencyError(f"vanishing fails for {bad}")
    return rep
