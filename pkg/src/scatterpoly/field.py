"""Table-backed arithmetic in the extension tower F_p <= F_q <= F_{q^n}.

The field F_{q^n} = F_{p^{m*n}} is realized as F_p[x]/(modulus) with a
deterministic modulus and primitive element, so independent runs agree on
every discrete log.  Construction picks

  * the monic irreducible polynomial of degree m*n whose coefficient vector
    (below the leading term) has the smallest integer encoding sum(c_i p^i),
  * the nonzero element of smallest integer encoding with full multiplicative
    order,

and then materializes complete log/antilog tables, so that multiplication,
inversion, Frobenius powers and norms are O(1) integer operations.  That is
what makes the exhaustive scans in :mod:`scatterpoly.scatter` feasible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DivisionByZero,
    EvenCharacteristicRejected,
    FieldTooLarge,
    NonPrime,
)

DEFAULT_CAP = 1 << 22
_TABLE_BLOCK = 4096


def is_prime(num: int) -> bool:
    if num < 2:
        return False
    if num < 4:
        return True
    if num % 2 == 0:
        return False
    f = 3
    while f * f <= num:
        if num % f == 0:
            return False
        f += 2
    return True


def factorize(num: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization by trial division, smallest prime first."""
    if num < 1:
        raise ValueError("factorize expects a positive integer")
    out = []
    rem = num
    f = 2
    while f * f <= rem:
        if rem % f == 0:
            e = 0
            while rem % f == 0:
                rem //= f
                e += 1
            out.append((f, e))
        f += 1 if f == 2 else 2
    if rem > 1:
        out.append((rem, 1))
    return tuple(out)


# ---------------------------------------------------------------------------
# Polynomial arithmetic over F_p used only during construction.
# Element vectors are little-endian (constant term first).


def _digits(value: int, p: int, width: int) -> list[int]:
    out = []
    for _ in range(width):
        out.append(value % p)
        value //= p
    return out


def _encode(coeffs, p: int) -> int:
    enc = 0
    for c in reversed(coeffs):
        enc = enc * p + c
    return enc


def _fixed_mulmod(a, b, mod, p):
    """Product of two length-d vectors modulo the monic polynomial `mod`."""
    d = len(mod) - 1
    res = [0] * (2 * d - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] += ai * bj
    for i in range(2 * d - 2, d - 1, -1):
        c = res[i] % p
        if c:
            base = i - d
            for j in range(d):
                res[base + j] -= c * mod[j]
    return [v % p for v in res[:d]]


def _fixed_powmod(vec, exponent: int, mod, p):
    d = len(mod) - 1
    result = [1] + [0] * (d - 1)
    base = list(vec)
    e = exponent
    while e:
        if e & 1:
            result = _fixed_mulmod(result, base, mod, p)
        e >>= 1
        if e:
            base = _fixed_mulmod(base, base, mod, p)
    return result


def _trim(poly):
    while poly and poly[-1] == 0:
        poly.pop()
    return poly


def _poly_mod(a, b, p):
    """Remainder of a by b over F_p (general degrees, b nonzero)."""
    a = _trim(list(a))
    b = _trim(list(b))
    inv_lead = pow(b[-1], -1, p)
    while len(a) >= len(b):
        c = (a[-1] * inv_lead) % p
        shift = len(a) - len(b)
        for j, bj in enumerate(b):
            a[shift + j] = (a[shift + j] - c * bj) % p
        _trim(a)
    return a


def _poly_gcd(a, b, p):
    a = _trim(list(a))
    b = _trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def _is_irreducible(mod, p: int) -> bool:
    """Rabin irreducibility test for a monic polynomial over F_p."""
    d = len(mod) - 1
    if d == 1:
        return True
    x = [0, 1] + [0] * (d - 2)
    if _fixed_powmod(x, p**d, mod, p) != x:
        return False
    for prime, _ in factorize(d):
        h = _fixed_powmod(x, p ** (d // prime), mod, p)
        diff = [(hi - xi) % p for hi, xi in zip(h, x)]
        g = _poly_gcd(diff, mod, p)
        if len(g) > 1:
            return False
    return True


def _find_modulus(p: int, d: int) -> tuple[int, ...]:
    if d == 1:
        return (0, 1)
    for enc in range(p**d):
        coeffs = _digits(enc, p, d)
        if coeffs[0] == 0:
            continue  # divisible by x
        if any(sum(c * pow(r, i, p) for i, c in enumerate(coeffs + [1])) % p == 0
               for r in range(p)):
            continue  # has a root in F_p
        candidate = coeffs + [1]
        if _is_irreducible(candidate, p):
            return tuple(candidate)
    raise RuntimeError(f"no irreducible polynomial of degree {d} over F_{p}")


def _find_generator(p: int, d: int, mod, group_order: int,
                    factorization) -> list[int]:
    one = [1] + [0] * (d - 1)
    for enc in range(1, p**d):
        vec = _digits(enc, p, d)
        if all(_fixed_powmod(vec, group_order // prime, mod, p) != one
               for prime, _ in factorization):
            return vec
    raise RuntimeError("no primitive element found (modulus not irreducible?)")


def _mult_matrix(vec, mod, p: int) -> np.ndarray:
    """Row i holds the coefficients of vec * x^i mod `mod` (so w @ M = w*vec)."""
    d = len(mod) - 1
    rows = [list(vec)]
    for _ in range(1, d):
        prev = rows[-1]
        h = prev[-1]
        nxt = [0] + prev[:-1]
        if h:
            for j in range(d):
                nxt[j] = (nxt[j] - h * mod[j]) % p
        rows.append(nxt)
    return np.array(rows, dtype=np.int64)


def _build_tables(p: int, d: int, mod, gamma_vec):
    size = p**d
    n_units = size - 1
    ppow = np.array([p**i for i in range(d)], dtype=np.int64)
    block = min(n_units, _TABLE_BLOCK)

    gamma_m = _mult_matrix(gamma_vec, mod, p)
    small = np.zeros((block, d), dtype=np.int64)
    small[0, 0] = 1
    for j in range(1, block):
        small[j] = small[j - 1] @ gamma_m % p

    big_step = _fixed_powmod(gamma_vec, block, mod, p)
    big_m = _mult_matrix(big_step, mod, p)

    antilog = np.empty(n_units, dtype=np.int64)
    cur = small
    idx = 0
    while idx < n_units:
        cnt = min(block, n_units - idx)
        antilog[idx:idx + cnt] = cur[:cnt] @ ppow
        idx += cnt
        if idx < n_units:
            cur = cur @ big_m % p

    log = np.full(size, -1, dtype=np.int64)
    log[antilog] = np.arange(n_units, dtype=np.int64)
    if int(np.count_nonzero(log >= 0)) != n_units:
        raise RuntimeError("log/antilog tables are not bijective")
    return antilog, log, ppow


@dataclass(frozen=True)
class FieldParams:
    """Field parameters without materialized tables.

    Enough for the purely arithmetic criteria (orders, norms and coset data of
    elements given by discrete log), which is what serves fields beyond the
    exhaustive-scan cap.
    """

    p: int
    m: int
    n: int

    @property
    def q(self) -> int:
        return self.p**self.m

    @property
    def degree(self) -> int:
        return self.m * self.n

    @property
    def size(self) -> int:
        return self.p ** (self.m * self.n)

    @property
    def order(self) -> int:
        return self.size - 1

    @property
    def subfield_index(self) -> int:
        return self.order // (self.q - 1)


@dataclass(frozen=True)
class FFElement:
    """One element of F_{q^n}: coefficient vector over F_p plus discrete log.

    ``dlog`` is absent exactly for the zero element.
    """

    coeffs: tuple[int, ...]
    dlog: int | None

    @property
    def is_zero(self) -> bool:
        return self.dlog is None

    def __str__(self) -> str:
        return "0" if self.dlog is None else f"g^{self.dlog}"


class FieldCtx:
    """Immutable context for F_{q^n} with full log/antilog tables.

    Construct via :func:`build_field`.  Safe to share across threads; no
    method mutates the context.
    """

    def __init__(self, p: int, m: int, n: int, cap: int, modulus, gamma_vec,
                 factorization, antilog, log, ppow):
        self.p = p
        self.m = m
        self.n = n
        self.cap = cap
        self.q = p**m
        self.degree = m * n
        self.size = p ** (m * n)
        self.order = self.size - 1
        self.subfield_index = self.order // (self.q - 1)
        self.modulus = tuple(modulus)
        self.factorization = tuple(factorization)
        self._antilog = antilog
        self._log = log
        self._ppow = ppow
        self.gamma = self.element_from_dlog(1) if self.order > 1 else self.one()

    # -- representation helpers ------------------------------------------

    @property
    def params(self) -> FieldParams:
        return FieldParams(self.p, self.m, self.n)

    @property
    def modulus_encoding(self) -> int:
        return _encode(self.modulus[:-1], self.p)

    @property
    def gamma_encoding(self) -> int:
        return self.encode(self.gamma)

    def encode(self, a: FFElement) -> int:
        return _encode(a.coeffs, self.p)

    def element_from_dlog(self, k: int) -> FFElement:
        k %= self.order
        enc = int(self._antilog[k])
        return FFElement(tuple(_digits(enc, self.p, self.degree)), k)

    def element_from_encoding(self, enc: int) -> FFElement:
        if not 0 <= enc < self.size:
            raise ValueError(f"encoding {enc} out of range for field of size {self.size}")
        if enc == 0:
            return self.zero()
        return FFElement(tuple(_digits(enc, self.p, self.degree)), int(self._log[enc]))

    def element_from_coeffs(self, coeffs) -> FFElement:
        vec = [c % self.p for c in coeffs]
        if len(vec) > self.degree:
            raise ValueError("coefficient vector longer than the field degree")
        vec += [0] * (self.degree - len(vec))
        return self.element_from_encoding(_encode(vec, self.p))

    def zero(self) -> FFElement:
        return FFElement((0,) * self.degree, None)

    def one(self) -> FFElement:
        return FFElement((1,) + (0,) * (self.degree - 1), 0)

    def minus_one(self) -> FFElement:
        return self.element_from_coeffs([self.p - 1])

    # -- arithmetic -------------------------------------------------------

    def add(self, a: FFElement, b: FFElement) -> FFElement:
        vec = [(x + y) % self.p for x, y in zip(a.coeffs, b.coeffs)]
        return self.element_from_encoding(_encode(vec, self.p))

    def neg(self, a: FFElement) -> FFElement:
        return self.element_from_encoding(
            _encode([(-x) % self.p for x in a.coeffs], self.p))

    def sub(self, a: FFElement, b: FFElement) -> FFElement:
        vec = [(x - y) % self.p for x, y in zip(a.coeffs, b.coeffs)]
        return self.element_from_encoding(_encode(vec, self.p))

    def mul(self, a: FFElement, b: FFElement) -> FFElement:
        if a.dlog is None or b.dlog is None:
            return self.zero()
        return self.element_from_dlog((a.dlog + b.dlog) % self.order)

    def inv(self, a: FFElement) -> FFElement:
        if a.dlog is None:
            raise DivisionByZero("inverse of zero")
        return self.element_from_dlog((-a.dlog) % self.order)

    def frobenius(self, a: FFElement, j: int) -> FFElement:
        """a ** (q**j); the identity for j = 0 and for j = n."""
        if j < 0:
            raise ValueError("Frobenius power must be nonnegative")
        if a.dlog is None:
            return a
        return self.element_from_dlog(a.dlog * pow(self.q, j, self.order) % self.order)

    def element_order(self, a: FFElement) -> int:
        """Exact multiplicative order, reduced prime by prime from q^n - 1."""
        if a.dlog is None:
            raise DivisionByZero("order of zero")
        order = self.order
        for prime, exp in self.factorization:
            for _ in range(exp):
                if (a.dlog * (order // prime)) % self.order == 0:
                    order //= prime
                else:
                    break
        return order

    def relative_norm(self, a: FFElement) -> FFElement:
        """Norm from F_{q^n} down to F_q, i.e. a ** ((q^n-1)/(q-1))."""
        if a.dlog is None:
            return a
        return self.element_from_dlog(a.dlog * self.subfield_index % self.order)

    def in_base_subfield(self, a: FFElement) -> bool:
        return a.dlog is None or a.dlog % self.subfield_index == 0

    def __repr__(self) -> str:
        return f"FieldCtx(p={self.p}, m={self.m}, n={self.n})"


def build_field(p: int, m: int, n: int, cap: int = DEFAULT_CAP,
                strict: bool = True) -> FieldCtx:
    """Construct F_{p^{m*n}} with deterministic modulus, generator and tables.

    ``strict`` rejects characteristic 2 (the scatteredness statements served
    by this package assume odd q); pass ``strict=False`` to experiment anyway.
    """
    if not is_prime(p):
        raise NonPrime(p)
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    size = p ** (m * n)
    if size > cap:
        raise FieldTooLarge(size, cap)
    if strict and p == 2:
        raise EvenCharacteristicRejected(
            "p = 2 rejected; pass strict=False to build even-characteristic fields")

    d = m * n
    modulus = _find_modulus(p, d)
    fact = factorize(size - 1) if size > 2 else ()
    gamma_vec = _find_generator(p, d, modulus, size - 1, fact)
    antilog, log, ppow = _build_tables(p, d, modulus, gamma_vec)
    return FieldCtx(p, m, n, cap, modulus, gamma_vec, fact, antilog, log, ppow)


def modulus_text(ctx: FieldCtx) -> str:
    """Human-readable form of the defining polynomial, e.g. ``x^2 + 1``."""
    parts = []
    for i in range(len(ctx.modulus) - 1, -1, -1):
        c = ctx.modulus[i]
        if c == 0:
            continue
        if i == 0:
            parts.append(str(c))
        else:
            var = "x" if i == 1 else f"x^{i}"
            parts.append(var if c == 1 else f"{c}{var}")
    return " + ".join(parts) if parts else "0"
