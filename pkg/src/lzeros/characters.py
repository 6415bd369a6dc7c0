"""Dirichlet characters with exact root-of-unity exponents.

A character mod k is stored as a table of exponents e(n) modulo the
exponent m of (Z/kZ)*, so that chi(n) = exp(2 pi i e(n) / m), with ``None``
marking residues not coprime to k.  Multiplicativity checks are therefore
exact integer comparisons.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from functools import cached_property

from .errors import DomainError, NotFundamental, NotPrimitive

__all__ = [
    "DirichletCharacter",
    "enumerate_characters",
    "primitive_characters",
    "gauss_sum",
    "kronecker_symbol",
    "is_fundamental_discriminant",
    "kronecker_character",
]


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _primitive_root(p: int, e: int) -> int:
    """Smallest generator of (Z/p^e Z)* for an odd prime p."""
    q = p**e
    order = (p - 1) * p ** (e - 1)
    prime_divs = list(_factorize(order))
    for g in range(2, q):
        if math.gcd(g, p) == 1 and all(pow(g, order // ell, q) != 1 for ell in prime_divs):
            return g
    raise AssertionError(f"no primitive root mod {q}")


def _crt_lift(residue: int, q: int, k: int) -> int:
    """The n mod k with n = residue (mod q) and n = 1 (mod k/q)."""
    rest = k // q
    for n in range(residue % q, k, q):
        if n % rest == 1 % rest:
            return n
    raise AssertionError("CRT lift failed")


def _cyclic_factors(k: int) -> list[tuple[int, int]]:
    """(generator mod k, order) pairs whose product decomposition covers (Z/kZ)*."""
    factors = []
    for p, e in sorted(_factorize(k).items()):
        q = p**e
        if p == 2:
            if e == 2:
                factors.append((_crt_lift(-1, q, k), 2))
            elif e >= 3:
                factors.append((_crt_lift(-1, q, k), 2))
                factors.append((_crt_lift(5, q, k), 2 ** (e - 2)))
        else:
            factors.append((_crt_lift(_primitive_root(p, e), q, k), (p - 1) * p ** (e - 1)))
    return factors


@dataclass(frozen=True)
class DirichletCharacter:
    """A Dirichlet character mod ``modulus``.

    ``exponents[n]`` is ``None`` when gcd(n, k) > 1, otherwise an integer
    e with chi(n) = exp(2 pi i e / order).
    """

    modulus: int
    order: int
    exponents: tuple
    label: str = ""

    def __call__(self, n: int) -> complex:
        e = self.exponents[n % self.modulus]
        if e is None:
            return 0j
        return _root(e, self.order)

    @cached_property
    def values(self) -> list[complex]:
        return [self(n) for n in range(self.modulus)]

    @property
    def is_principal(self) -> bool:
        return all(e in (None, 0) for e in self.exponents)

    @property
    def is_real(self) -> bool:
        return all(e is None or (2 * e) % self.order == 0 for e in self.exponents)

    @property
    def parity(self) -> int:
        """0 if chi(-1) = 1, 1 if chi(-1) = -1."""
        e = self.exponents[self.modulus - 1]
        return 0 if e % self.order == 0 else 1

    @cached_property
    def conductor(self) -> int:
        k = self.modulus
        for d in sorted(_divisors(k)):
            # trivial on the units that are 1 mod d
            if all(
                self.exponents[n] % self.order == 0
                for n in range(1, k, d)
                if math.gcd(n, k) == 1
            ):
                return d
        return k

    @property
    def is_primitive(self) -> bool:
        return self.conductor == self.modulus

    def conjugate(self) -> "DirichletCharacter":
        exps = tuple(None if e is None else (-e) % self.order for e in self.exponents)
        return DirichletCharacter(self.modulus, self.order, exps, f"conj({self.label})")

    def primitive_core(self) -> "DirichletCharacter":
        """The primitive character mod the conductor that induces this one."""
        f = self.conductor
        exps: list = [None] * f
        for n in range(self.modulus):
            e = self.exponents[n]
            if e is not None and exps[n % f] is None:
                exps[n % f] = e
        if f == 1:
            exps = [0]
        return DirichletCharacter(f, self.order, tuple(exps), f"core({self.label})")

    def describe(self) -> dict:
        return {
            "modulus": self.modulus,
            "label": self.label,
            "parity": self.parity,
            "conductor": self.conductor,
            "primitive": self.is_primitive,
        }


def _root(e: int, m: int) -> complex:
    e %= m
    # exact values on the axes avoid float noise in real characters
    if 4 * e % m == 0:
        return (1, 1j, -1, -1j)[4 * e // m]
    return cmath.exp(2j * math.pi * e / m)


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def enumerate_characters(k: int) -> list[DirichletCharacter]:
    """All phi(k) characters mod ``k`` in lexicographic order of generator exponents."""
    if not isinstance(k, int) or k < 3:
        raise DomainError(f"modulus must be an integer >= 3, got {k!r}")
    factors = _cyclic_factors(k)
    orders = [o for _, o in factors]
    group_exp = math.lcm(*orders) if orders else 1

    # discrete logs: residue -> exponent vector
    logs: dict[int, tuple[int, ...]] = {}
    for vec in itertools.product(*(range(o) for o in orders)):
        n = 1
        for (g, _), x in zip(factors, vec):
            n = n * pow(g, x, k) % k
        logs[n] = vec

    chars = []
    for choice in itertools.product(*(range(o) for o in orders)):
        exps: list = [None] * k
        for n, vec in logs.items():
            exps[n] = sum(c * x * (group_exp // o) for c, x, o in zip(choice, vec, orders)) % group_exp
        label = f"{k}." + ".".join(str(c) for c in choice) if choice else f"{k}.0"
        chars.append(DirichletCharacter(k, group_exp, tuple(exps), label))
    return chars


def primitive_characters(k: int) -> list[DirichletCharacter]:
    """Primitive nonprincipal characters mod ``k``."""
    return [c for c in enumerate_characters(k) if c.is_primitive and not c.is_principal]


def gauss_sum(chi: DirichletCharacter) -> complex:
    """tau(chi) = sum_{n=1}^{k} chi(n) exp(2 pi i n / k), by direct summation."""
    if not chi.is_primitive:
        raise NotPrimitive(f"Gauss sum requested for imprimitive character {chi.label}")
    k = chi.modulus
    return sum(chi(n) * cmath.exp(2j * math.pi * n / k) for n in range(1, k + 1))


def kronecker_symbol(d: int, n: int) -> int:
    """Kronecker symbol (d / n) for integers d and n >= 0."""
    if n == 0:
        return 1 if abs(d) == 1 else 0
    result = 1
    while n % 2 == 0:
        n //= 2
        if d % 2 == 0:
            return 0
        if d % 8 in (3, 5):
            result = -result
    # Jacobi symbol (d / n), n odd positive
    a = d % n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _squarefree(n: int) -> bool:
    return all(e == 1 for e in _factorize(abs(n)).values())


def is_fundamental_discriminant(d: int) -> bool:
    if d in (0, 1):
        return False
    if d % 4 == 1:
        return _squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and _squarefree(m)
    return False


def kronecker_character(d: int) -> DirichletCharacter:
    """The real primitive character n -> (d / n) mod |d| attached to Q(sqrt d)."""
    if not is_fundamental_discriminant(d):
        raise NotFundamental(f"{d} is not a fundamental discriminant")
    k = abs(d)
    exps = tuple(
        None if math.gcd(n, k) != 1 else (0 if kronecker_symbol(d, n) == 1 else 1)
        for n in range(k)
    )
    return DirichletCharacter(k, 2, exps, f"chi_{d}")
