"""Prime-field arithmetic with a fixed-width little-endian byte encoding."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

MAX_MODULUS = 1 << 62
MR_ROUNDS = 64
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class FieldError(ValueError):
    pass


class CompositeModulus(FieldError):
    pass


class TooSmall(FieldError):
    pass


class TooLarge(FieldError):
    pass


class DivisionByZero(ZeroDivisionError):
    pass


def is_probable_prime(n: int, rounds: int = MR_ROUNDS) -> bool:
    """Miller-Rabin with the first twelve primes as bases plus seeded random ones.

    The twelve fixed bases already make the test deterministic below 3.3e24,
    which covers every modulus this package accepts.
    """
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    rng = random.Random(n)
    bases = list(_SMALL_PRIMES)
    bases += [rng.randrange(2, n - 1) for _ in range(max(0, rounds - len(bases)))]
    for a in bases:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimeField:
    modulus: int
    byte_len: int = field(init=False, compare=False)

    def __post_init__(self):
        p = self.modulus
        if p < 3:
            raise TooSmall(f"modulus must be >= 3, got {p}")
        if p >= MAX_MODULUS:
            raise TooLarge(f"modulus must be < 2^62, got {p}")
        if not is_probable_prime(p):
            raise CompositeModulus(f"{p} is not prime")
        object.__setattr__(self, "byte_len", max(1, ((p - 1).bit_length() + 7) // 8))

    def __call__(self, value: int) -> "FieldElement":
        return FieldElement(value % self.modulus, self)

    def __len__(self) -> int:
        return self.modulus

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(0, self)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(1, self)

    # integer-level operations; hot paths work on plain ints and numpy arrays
    def add(self, a: int, b: int) -> int:
        return (a + b) % self.modulus

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.modulus

    def mul(self, a: int, b: int) -> int:
        return a * b % self.modulus

    def inv(self, a: int) -> int:
        if a % self.modulus == 0:
            raise DivisionByZero("inverse of zero")
        return pow(a, self.modulus - 2, self.modulus)

    def div(self, a: int, b: int) -> int:
        return a * self.inv(b) % self.modulus

    def to_bytes(self, value: int) -> bytes:
        if not 0 <= value < self.modulus:
            raise FieldError(f"{value} is not a canonical element of F_{self.modulus}")
        return value.to_bytes(self.byte_len, "little")

    def from_bytes(self, data: bytes) -> int:
        if len(data) != self.byte_len:
            raise FieldError(f"expected {self.byte_len} bytes, got {len(data)}")
        value = int.from_bytes(data, "little")
        if value >= self.modulus:
            raise FieldError(f"non-canonical encoding {data.hex()}")
        return value

    def sample(self, source: random.Random) -> int:
        """Uniform element by rejection sampling on byte_len-byte draws."""
        bits = (self.modulus - 1).bit_length()
        mask = (1 << bits) - 1
        while True:
            x = int.from_bytes(source.randbytes(self.byte_len), "little") & mask
            if x < self.modulus:
                return x


@dataclass(frozen=True)
class FieldElement:
    value: int
    field: PrimeField

    def __post_init__(self):
        if not 0 <= self.value < self.field.modulus:
            raise FieldError(f"{self.value} is not canonical mod {self.field.modulus}")

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError("operands live in different fields")
            return other.value
        return other % self.field.modulus

    def __add__(self, other):
        return FieldElement(self.field.add(self.value, self._coerce(other)), self.field)

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field.sub(self.value, self._coerce(other)), self.field)

    def __rsub__(self, other):
        return FieldElement(self.field.sub(self._coerce(other), self.value), self.field)

    def __mul__(self, other):
        return FieldElement(self.field.mul(self.value, self._coerce(other)), self.field)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field.div(self.value, self._coerce(other)), self.field)

    def __neg__(self):
        return FieldElement((-self.value) % self.field.modulus, self.field)

    def __pow__(self, e: int):
        if e < 0:
            return FieldElement(pow(self.field.inv(self.value), -e, self.field.modulus), self.field)
        return FieldElement(pow(self.value, e, self.field.modulus), self.field)

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field.inv(self.value), self.field)

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.value} (mod {self.field.modulus})"

    def to_bytes(self) -> bytes:
        return self.field.to_bytes(self.value)


def create_prime_field(modulus: int) -> PrimeField:
    return PrimeField(modulus)


def field_arithmetic(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    if a.field != b.field:
        raise FieldError("operands live in different fields")
    try:
        return {"add": a.__add__, "sub": a.__sub__, "mul": a.__mul__, "div": a.__truediv__}[op](b)
    except KeyError:
        raise ValueError(f"unknown operation {op!r}") from None


def canonical_bytes(x: FieldElement) -> bytes:
    return x.to_bytes()


def sample_uniform(fld: PrimeField, source: random.Random) -> FieldElement:
    return FieldElement(fld.sample(source), fld)
