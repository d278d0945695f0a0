"""Finite fields GF(p^k) and the counting-only fields R and C.

Extension fields are polynomial residues modulo a fixed monic irreducible.
Elements are addressed by an integer index ``sum(c_i * p**i)`` over their
coefficient vector (constant term first); the index is what the numpy
tables and the compiled kernels work with.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product
from math import gcd
from typing import Iterator, Sequence

import numpy as np

LOG_TABLE_LIMIT = 1 << 16
ARITH_TABLE_LIMIT = 1 << 10


class FieldError(ValueError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    i = 3
    while i * i <= p:
        if p % i == 0:
            return False
        i += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# polynomials over GF(p): lists of coefficients, constant term first


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim([x % p for x in a])
    inv_lead = pow(m[-1], -1, p)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        f = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - f * c) % p
        _trim(a)
    return a


def _poly_mulmod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _poly_mod(out, m, p)


def _poly_powmod(a: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = _poly_mod(a, m, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, m, p)
        base = _poly_mulmod(base, base, m, p)
        e >>= 1
    return result


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim([x % p for x in a]), _trim([x % p for x in b])
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def _poly_divides(d: list[int], a: list[int], p: int) -> bool:
    return not _poly_mod(a, d, p)


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Exhaustive trial division for degree <= 4, Rabin's test beyond."""
    f = _trim([int(c) % p for c in modulus])
    k = len(f) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    if k <= 4:
        for deg in range(1, k // 2 + 1):
            for low in product(range(p), repeat=deg):
                if _poly_divides(list(low) + [1], f, p):
                    return False
        return True
    x = [0, 1]
    if _poly_powmod(x, p**k, f, p) != _poly_mod(x, f, p):
        return False
    for r in prime_factors(k):
        h = _poly_powmod(x, p ** (k // r), f, p)
        diff = h + [0] * max(0, 2 - len(h))
        diff[1] -= 1
        g = _poly_gcd(f, diff, p)
        if len(g) > 1:
            return False
    return True


def smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree k (low degree first)."""
    for low in product(range(p), repeat=k):
        cand = list(low) + [1]
        if is_irreducible(cand, p):
            return tuple(cand)
    raise FieldError(f"no irreducible of degree {k} over GF({p})")  # unreachable


class FieldSpec:
    """Base for field specs; only counting is common to all kinds."""

    kind: str = ""

    def roots_of_unity_count(self, d: int) -> int:
        raise NotImplementedError

    def to_json(self) -> dict:
        return {"kind": self.kind}


class RealField(FieldSpec):
    kind = "real"

    def roots_of_unity_count(self, d: int) -> int:
        _check_positive(d)
        return gcd(d, 2)

    def __repr__(self) -> str:
        return "RealField()"

    def __eq__(self, other):
        return isinstance(other, RealField)

    def __hash__(self):
        return hash("real")


class ComplexField(FieldSpec):
    kind = "complex"

    def roots_of_unity_count(self, d: int) -> int:
        _check_positive(d)
        return d

    def __repr__(self) -> str:
        return "ComplexField()"

    def __eq__(self, other):
        return isinstance(other, ComplexField)

    def __hash__(self):
        return hash("complex")


def _check_positive(d: int) -> None:
    if d < 1:
        raise FieldError("root-of-unity order must be positive")


class FiniteField(FieldSpec):
    """GF(p^k) with a fixed modulus and a cached primitive element."""

    kind = "finite"

    def __init__(self, p: int, k: int = 1, modulus: Sequence[int] | None = None):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        if k < 1:
            raise FieldError("extension degree must be >= 1")
        if modulus is None:
            modulus = smallest_irreducible(p, k) if k > 1 else (0, 1)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise FieldError(f"modulus must be monic of degree {k}")
        if not is_irreducible(modulus, p):
            raise FieldError(f"modulus {list(modulus)} is reducible over GF({p})")
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = modulus
        self._mod_list = list(modulus)
        self.primitive = self._find_primitive()

    # identity -----------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteField) and (self.p, self.k, self.modulus) == (
            other.p,
            other.k,
            other.modulus,
        )

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.modulus))

    def __repr__(self) -> str:
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k}, modulus={list(self.modulus)})"

    def to_json(self) -> dict:
        return {"p": self.p, "k": self.k, "modulus": list(self.modulus)}

    # index <-> coefficients ---------------------------------------------

    def _rep_of(self, index: int) -> tuple[int, ...]:
        rep = []
        for _ in range(self.k):
            rep.append(index % self.p)
            index //= self.p
        return tuple(rep)

    def _index_of(self, rep: Sequence[int]) -> int:
        idx = 0
        for c in reversed(rep):
            idx = idx * self.p + c
        return idx

    def element(self, value: int | Sequence[int]) -> "FqElement":
        """An element from an int (prime fields: residue; else index) or coefficients."""
        if isinstance(value, (int, np.integer)):
            if self.k == 1:
                return FqElement(self, int(value) % self.p)
            if not 0 <= value < self.q:
                raise FieldError("element index out of range")
            return FqElement(self, int(value))
        rep = [int(c) % self.p for c in value]
        if len(rep) > self.k:
            rep = _poly_mod(rep, self._mod_list, self.p)
        rep = rep + [0] * (self.k - len(rep))
        return FqElement(self, self._index_of(rep))

    @property
    def zero(self) -> "FqElement":
        return FqElement(self, 0)

    @property
    def one(self) -> "FqElement":
        return FqElement(self, 1)

    @property
    def eta(self) -> "FqElement":
        return self.primitive

    def elements(self) -> Iterator["FqElement"]:
        for i in range(self.q):
            yield FqElement(self, i)

    def units(self) -> Iterator["FqElement"]:
        for i in range(1, self.q):
            yield FqElement(self, i)

    # raw index arithmetic -------------------------------------------------

    def _add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        ra, rb = self._rep_of(a), self._rep_of(b)
        return self._index_of([(x + y) % self.p for x, y in zip(ra, rb)])

    def _neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        return self._index_of([(-x) % self.p for x in self._rep_of(a)])

    def _mul_slow(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        prod = _poly_mulmod(_trim(list(self._rep_of(a))), _trim(list(self._rep_of(b))), self._mod_list, self.p)
        return self._index_of(prod + [0] * (self.k - len(prod)))

    def _mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.k == 1:
            return a * b % self.p
        if self.q <= LOG_TABLE_LIMIT:
            exp, log = self._log_tables
            return exp[(log[a] + log[b]) % (self.q - 1)]
        return self._mul_slow(a, b)

    def _pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("zero to a negative power")
            return 1 if e == 0 else 0
        e %= self.q - 1
        if self.k == 1:
            return pow(a, e, self.p)
        if self.q <= LOG_TABLE_LIMIT:
            exp, log = self._log_tables
            return exp[log[a] * e % (self.q - 1)]
        result, base = 1, a
        while e:
            if e & 1:
                result = self._mul_slow(result, base)
            base = self._mul_slow(base, base)
            e >>= 1
        return result

    def _inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._pow(a, self.q - 2)

    def _order(self, a: int) -> int:
        n = self.q - 1
        for r in prime_factors(self.q - 1):
            while n % r == 0 and self._pow_slow(a, n // r) == 1:
                n //= r
        return n

    def _pow_slow(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self._mul_slow(result, base)
            base = self._mul_slow(base, base)
            e >>= 1
        return result

    def _find_primitive(self) -> "FqElement":
        if self.q == 2:
            return FqElement(self, 1)
        n = self.q - 1
        primes = prime_factors(n)
        for rep in product(range(self.p), repeat=self.k):
            idx = self._index_of(rep)
            if idx == 0:
                continue
            if all(self._pow_slow(idx, n // r) != 1 for r in primes):
                return FqElement(self, idx)
        raise FieldError("no primitive element found")  # unreachable

    # tables ---------------------------------------------------------------

    @cached_property
    def _log_tables(self) -> tuple[list[int], list[int]]:
        if self.q > LOG_TABLE_LIMIT:
            raise FieldError("field too large for discrete-log tables")
        exp = [0] * (self.q - 1)
        log = [-1] * self.q
        g = self.primitive.index
        x = 1
        for i in range(self.q - 1):
            exp[i] = x
            log[x] = i
            x = self._mul_slow(x, g)
        return exp, log

    def log(self, x: "FqElement") -> int:
        """Discrete log base the primitive element."""
        if x.index == 0:
            raise FieldError("log of zero")
        return self._log_tables[1][x.index]

    def exp(self, e: int) -> "FqElement":
        return FqElement(self, self._log_tables[0][e % (self.q - 1)])

    @cached_property
    def exp_array(self) -> np.ndarray:
        return np.asarray(self._log_tables[0], dtype=np.int64)

    @cached_property
    def log_array(self) -> np.ndarray:
        return np.asarray(self._log_tables[1], dtype=np.int64)

    @cached_property
    def tables(self) -> "ArithTables":
        """Dense add/mul/neg/inv tables over element indices."""
        if self.q > ARITH_TABLE_LIMIT:
            raise FieldError(f"arithmetic tables limited to q <= {ARITH_TABLE_LIMIT}")
        q = self.q
        idx = np.arange(q)
        if self.k == 1:
            add = (idx[:, None] + idx[None, :]) % q
            mul = (idx[:, None] * idx[None, :]) % q
        else:
            reps = np.array([self._rep_of(i) for i in range(q)], dtype=np.int64)
            weights = self.p ** np.arange(self.k)
            add = (((reps[:, None, :] + reps[None, :, :]) % self.p) * weights).sum(axis=2)
            exp, log = self.exp_array, self.log_array
            mul = np.zeros((q, q), dtype=np.int64)
            la = log[1:]
            mul[1:, 1:] = exp[(la[:, None] + la[None, :]) % (q - 1)]
        neg = np.argmin(add, axis=1)  # add[a, neg[a]] == 0 is the unique minimum
        inv = np.zeros(q, dtype=np.int64)
        inv[1:] = np.argmax(mul[1:] == 1, axis=1)
        t = ArithTables(
            q,
            np.ascontiguousarray(add, dtype=np.int32),
            np.ascontiguousarray(mul, dtype=np.int32),
            neg.astype(np.int32),
            inv.astype(np.int32),
        )
        for arr in (t.add, t.mul, t.neg, t.inv):
            arr.setflags(write=False)
        return t

    # counting ---------------------------------------------------------------

    def roots_of_unity_count(self, d: int) -> int:
        _check_positive(d)
        return gcd(d, self.q - 1)

    def primitive_root_of_unity(self, d: int) -> "FqElement":
        """eta^((q-1)/d), an element of multiplicative order exactly d."""
        _check_positive(d)
        if (self.q - 1) % d:
            raise FieldError(f"{d} does not divide q - 1 = {self.q - 1}")
        return self.primitive ** ((self.q - 1) // d)


@dataclass(frozen=True)
class ArithTables:
    q: int
    add: np.ndarray
    mul: np.ndarray
    neg: np.ndarray
    inv: np.ndarray


class FqElement:
    """An element of a finite field, identified by its index."""

    __slots__ = ("field", "index")

    def __init__(self, field: FiniteField, index: int):
        self.field = field
        self.index = index

    @property
    def rep(self) -> tuple[int, ...]:
        return self.field._rep_of(self.index)

    def _coerce(self, other) -> int:
        if isinstance(other, FqElement):
            if other.field is not self.field and other.field != self.field:
                raise FieldError("elements of different fields")
            return other.index
        if isinstance(other, int):
            return self.field.element(other).index
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FqElement(self.field, self.field._add(self.index, o))

    __radd__ = __add__

    def __neg__(self):
        return FqElement(self.field, self.field._neg(self.index))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FqElement(self.field, self.field._add(self.index, self.field._neg(o)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FqElement(self.field, self.field._mul(self.index, o))

    __rmul__ = __mul__

    def inv(self) -> "FqElement":
        return FqElement(self.field, self.field._inv(self.index))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * FqElement(self.field, self.field._inv(o))

    def __pow__(self, e: int) -> "FqElement":
        return FqElement(self.field, self.field._pow(self.index, int(e)))

    def __eq__(self, other) -> bool:
        if isinstance(other, FqElement):
            return self.index == other.index and self.field == other.field
        if isinstance(other, int):
            return self.index == self.field.element(other).index
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.q, self.index))

    def __bool__(self) -> bool:
        return self.index != 0

    def order(self) -> int:
        if self.index == 0:
            raise FieldError("zero has no multiplicative order")
        return self.field._order(self.index)

    def log(self) -> int:
        return self.field.log(self)

    def notation(self) -> str:
        """'g^k' in powers of the primitive element, '0' for zero."""
        if self.index == 0:
            return "0"
        return f"g^{self.log()}"

    def __repr__(self) -> str:
        if self.field.k == 1:
            return f"{self.index}"
        return f"{list(self.rep)}"


def make_field(p: int, k: int = 1, modulus: Sequence[int] | None = None) -> FiniteField:
    return FiniteField(p, k, modulus)


def roots_of_unity_count(f: FieldSpec, d: int) -> int:
    return f.roots_of_unity_count(d)


def primitive_root_of_unity(f: FiniteField, d: int) -> FqElement:
    return f.primitive_root_of_unity(d)


def field_from_json(data: dict) -> FieldSpec:
    kind = data.get("kind")
    if kind == "real":
        return RealField()
    if kind == "complex":
        return ComplexField()
    return FiniteField(int(data["p"]), int(data.get("k", 1)), data.get("modulus"))


@lru_cache(maxsize=64)
def field_for_order(q: int) -> FiniteField:
    """GF(q) with the default modulus, for a prime power q."""
    for p in prime_factors(q):
        k, m = 0, q
        while m % p == 0:
            m //= p
            k += 1
        if m == 1:
            return FiniteField(p, k)
    raise FieldError(f"{q} is not a prime power")
