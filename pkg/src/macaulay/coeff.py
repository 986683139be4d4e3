"""Exact coefficient fields: arbitrary-precision rationals and prime fields F_p.

Field objects own the arithmetic; elements are plain immutable values
(``Fraction`` for the rationals, canonical residues ``int`` in [0, p) for F_p),
so they hash, compare and travel between threads without ceremony.
"""

from fractions import Fraction

from .errors import UsageError

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond any practical modulus."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
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


class RationalField:
    """The field Q, elements stored as reduced ``Fraction`` values."""

    kind = "rationals"
    characteristic = 0

    zero = Fraction(0)
    one = Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero in Q")
        return a / b

    def inv(self, a):
        return self.div(self.one, a)

    def is_zero(self, a):
        return a == 0

    def parse(self, text):
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"bad rational literal {text!r}") from exc

    def render(self, a) -> str:
        return str(a)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash(("field", 0))

    def __repr__(self):
        return "Q"


class PrimeField:
    """The field F_p for prime p, elements stored as residues in [0, p)."""

    kind = "prime-field"

    def __init__(self, p: int):
        if not is_prime(p):
            raise UsageError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.zero = 0
        self.one = 1 % p

    def from_int(self, n):
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def div(self, a, b):
        if b % self.p == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return a * pow(b, self.p - 2, self.p) % self.p

    def inv(self, a):
        return self.div(1, a)

    def is_zero(self, a):
        return a % self.p == 0

    def parse(self, text):
        try:
            return int(text, 10) % self.p
        except ValueError as exc:
            raise UsageError(f"bad residue literal {text!r}") from exc

    def render(self, a) -> str:
        return str(a % self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("field", self.p))

    def __repr__(self):
        return f"F_{self.p}"


def field_arith(field, a, b, op: str):
    """Dispatch one binary field operation by name (add, sub, mul, div)."""
    try:
        fn = {"add": field.add, "sub": field.sub, "mul": field.mul, "div": field.div}[op]
    except KeyError:
        raise UsageError(f"unknown field operation {op!r}") from None
    return fn(a, b)


def field_from_spec(text: str):
    """Build a field from a CLI spec: ``q`` or ``fp:<p>``."""
    text = text.strip().lower()
    if text == "q":
        return RationalField()
    if text.startswith("fp:"):
        try:
            p = int(text[3:], 10)
        except ValueError:
            raise UsageError(f"bad field spec {text!r}") from None
        return PrimeField(p)
    raise UsageError(f"unknown field spec {text!r} (expected 'q' or 'fp:<p>')")
