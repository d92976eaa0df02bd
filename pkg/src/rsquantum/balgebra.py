"""The Borel halves B (e_i, w_i) and B' (f_i, w'_i) as free algebras with torus.

An element is a sparse map ``(word, torus) -> RatFn``. On the E-side a key
denotes ``e_word * w_torus``, on the F-side ``f_word * w'_torus``. Torus
factors always sit on the right; multiplication moves them past letters:

    w_t e_j = <w'_j, w_t> e_j w_t          w'_t f_j = <w'_t, w_j> f_j w'_t

No Serre relation is imposed here. The quotient is detected by the pairing.
"""

from __future__ import annotations

from itertools import combinations

from .coeffs import ONE, ZERO, RatFn
from .rootsystem import RootDatum, unit, vadd, vneg
from .words import content

E, F = "E", "F"


def _addto(d: dict, key, c: RatFn) -> None:
    old = d.get(key)
    if old is None:
        if c:
            d[key] = c
    else:
        new = old + c
        if new:
            d[key] = new
        else:
            del d[key]


class BElement:
    __slots__ = ("rd", "side", "terms")

    def __init__(self, rd: RootDatum, side: str, terms: dict | None = None):
        self.rd = rd
        self.side = side
        self.terms = terms if terms is not None else {}

    # constructors

    @classmethod
    def word(cls, rd, side, w, coeff=ONE, torus=None) -> "BElement":
        torus = tuple(torus) if torus is not None else (0,) * rd.rank
        return cls(rd, side, {(tuple(w), torus): coeff} if coeff else {})

    @classmethod
    def one(cls, rd, side) -> "BElement":
        return cls.word(rd, side, ())

    @classmethod
    def torus(cls, rd, side, t) -> "BElement":
        return cls.word(rd, side, (), torus=t)

    @classmethod
    def gen(cls, rd, side, i) -> "BElement":
        return cls.word(rd, side, (i,))

    # linear structure

    def copy(self) -> "BElement":
        return BElement(self.rd, self.side, dict(self.terms))

    def _check(self, other: "BElement") -> None:
        if other.side != self.side or other.rd is not self.rd:
            raise ValueError("elements live on different sides or root data")

    def __add__(self, other: "BElement") -> "BElement":
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            _addto(out, k, c)
        return BElement(self.rd, self.side, out)

    def __neg__(self) -> "BElement":
        return BElement(self.rd, self.side, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "BElement") -> "BElement":
        return self + (-other)

    def scale(self, c) -> "BElement":
        if not isinstance(c, RatFn):
            c = RatFn.const(c)
        if not c:
            return BElement(self.rd, self.side)
        return BElement(self.rd, self.side, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, BElement):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, c):
        return self.scale(c)

    def __pow__(self, k: int) -> "BElement":
        out = BElement.one(self.rd, self.side)
        for _ in range(k):
            out = multiply(out, self)
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BElement)
            and self.side == other.side
            and self.terms == other.terms
        )

    def __len__(self) -> int:
        return len(self.terms)

    def coeff(self, w, torus=None) -> RatFn:
        torus = tuple(torus) if torus is not None else (0,) * self.rd.rank
        return self.terms.get((tuple(w), torus), ZERO)

    # grading

    def weights(self) -> set:
        return {content(w, self.rd.rank) for w, _ in self.terms}

    def weight(self) -> tuple:
        ws = self.weights()
        if len(ws) > 1:
            raise ValueError("element is not homogeneous")
        return ws.pop() if ws else (0,) * self.rd.rank

    def is_torus_free(self) -> bool:
        return all(not any(t) for _, t in self.terms)

    def word_part(self) -> dict:
        """word -> coeff for a torus-free element."""
        if not self.is_torus_free():
            raise ValueError("element carries torus factors")
        return {w: c for (w, _), c in self.terms.items()}

    def leading_word(self):
        return max(w for w, _ in self.terms)

    def __repr__(self) -> str:
        return f"BElement({self.side}, {format_element(self)})"

    def to_json(self):
        from .words import to_str

        return [
            {"coeff": c.to_json(), "word": to_str(w), "torus": list(t)}
            for (w, t), c in sorted(self.terms.items())
        ]


def format_element(x: BElement) -> str:
    from .words import to_str

    if not x.terms:
        return "0"
    letter = "e" if x.side == E else "f"
    om = "w" if x.side == E else "w'"
    parts = []
    for (w, t), c in sorted(x.terms.items(), key=lambda kv: (kv[0][0], kv[0][1])):
        mon = []
        if w:
            mon.append(f"{letter}{to_str(w)}")
        if any(t):
            mon.append(f"{om}{list(t)}")
        parts.append(f"({c})*{'*'.join(mon) if mon else '1'}")
    return " + ".join(parts)


def commute_scalar_exps(rd: RootDatum, side: str, torus, w) -> tuple[int, int]:
    """Exponents of the scalar from moving a torus factor to the right of a word."""
    if not any(torus) or not w:
        return 0, 0
    wt = content(w, rd.rank)
    if side == E:
        return rd.tp_exps(wt, torus)
    return rd.tp_exps(torus, wt)


def multiply(x: BElement, y: BElement) -> BElement:
    x._check(y)
    rd, side = x.rd, x.side
    out: dict = {}
    for (w1, t1), c1 in x.terms.items():
        t1_free = not any(t1)
        for (w2, t2), c2 in y.terms.items():
            c = c1 * c2
            if not t1_free and w2:
                a, b = commute_scalar_exps(rd, side, t1, w2)
                if a or b:
                    c = c * RatFn.rs(a, b)
            _addto(out, (w1 + w2, vadd(t1, t2)), c)
    return BElement(rd, side, out)


def counit(x: BElement) -> RatFn:
    total = ZERO
    for (w, _), c in x.terms.items():
        if not w:
            total = total + c
    return total


class TensorElement:
    """Sparse sum of coefficient * (k-fold tensor of (word, torus) keys)."""

    __slots__ = ("rd", "sides", "terms")

    def __init__(self, rd: RootDatum, sides: tuple, terms: dict | None = None):
        self.rd = rd
        self.sides = tuple(sides)
        self.terms = terms if terms is not None else {}

    @classmethod
    def of(cls, *factors: BElement) -> "TensorElement":
        rd = factors[0].rd
        terms = {(): ONE}
        for f in factors:
            nxt = {}
            for k, c in terms.items():
                for key, c2 in f.terms.items():
                    _addto(nxt, k + (key,), c * c2)
            terms = nxt
        return cls(rd, tuple(f.side for f in factors), terms)

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            _addto(out, k, c)
        return TensorElement(self.rd, self.sides, out)

    def __neg__(self):
        return TensorElement(self.rd, self.sides, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return TensorElement(self.rd, self.sides, {k: v * c for k, v in self.terms.items() if v})

    def __eq__(self, other) -> bool:
        return isinstance(other, TensorElement) and self.sides == other.sides and self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def __mul__(self, other: "TensorElement") -> "TensorElement":
        out: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                c = c1 * c2
                key = []
                for side, (w1, t1), (w2, t2) in zip(self.sides, k1, k2):
                    if any(t1) and w2:
                        a, b = commute_scalar_exps(self.rd, side, t1, w2)
                        if a or b:
                            c = c * RatFn.rs(a, b)
                    key.append((w1 + w2, vadd(t1, t2)))
                _addto(out, tuple(key), c)
        return TensorElement(self.rd, self.sides, out)

    def factor(self, key, slot: int) -> BElement:
        return BElement.word(self.rd, self.sides[slot], key[slot][0], torus=key[slot][1])

    def apply(self, slot: int, fn) -> "TensorElement":
        """Apply a linear map BElement -> TensorElement (or BElement) at one slot."""
        out: dict = {}
        sides = None
        for key, c in self.terms.items():
            img = fn(self.factor(key, slot))
            if isinstance(img, BElement):
                img = TensorElement(self.rd, (img.side,), {(k,): v for k, v in img.terms.items()})
            sides = self.sides[:slot] + img.sides + self.sides[slot + 1 :]
            for ikey, ic in img.terms.items():
                _addto(out, key[:slot] + ikey + key[slot + 1 :], c * ic)
        if sides is None:
            sides = self.sides
        return TensorElement(self.rd, sides, out)

    def contract(self, fn) -> BElement:
        """Map each pure tensor to a BElement via fn(factors) and sum."""
        total = None
        for key, c in self.terms.items():
            img = fn([self.factor(key, k) for k in range(len(self.sides))]).scale(c)
            total = img if total is None else total + img
        return total

    def __repr__(self) -> str:
        from .words import to_str

        parts = []
        for key, c in sorted(self.terms.items()):
            parts.append(
                f"({c})*" + " (x) ".join(f"{to_str(w) or '1'}{list(t) if any(t) else ''}" for w, t in key)
            )
        return "TensorElement(" + " + ".join(parts) + ")"


def _coproduct_word(rd: RootDatum, side: str, w, torus) -> dict:
    """Delta(word * torus) as {(left_key, right_key): RatFn}."""
    n = len(w)
    pe = rd.pair_exps
    letters = [unit(rd.rank, j) for j in w]
    out: dict = {}
    for size in range(n + 1):
        for chosen in combinations(range(n), size):
            sel = set(chosen)
            a = b = 0
            shift = torus
            for k in chosen:
                shift = vadd(shift, letters[k])
                jk = w[k] - 1
                for m in range(k + 1, n):
                    if m in sel:
                        continue
                    jm = w[m] - 1
                    if side == E:
                        x, y = pe[jm][jk]
                    else:
                        x, y = pe[jk][jm]
                    a += x
                    b += y
            picked = tuple(w[k] for k in chosen)
            rest = tuple(w[m] for m in range(n) if m not in sel)
            if side == E:
                key = ((rest, shift), (picked, torus))
            else:
                key = ((picked, torus), (rest, shift))
            _addto(out, key, RatFn.rs(a, b))
    return out


def coproduct(x: BElement) -> TensorElement:
    out: dict = {}
    for (w, t), c in x.terms.items():
        for key, v in _coproduct_word(x.rd, x.side, w, t).items():
            _addto(out, key, c * v)
    return TensorElement(x.rd, (x.side, x.side), out)


def antipode(x: BElement) -> BElement:
    rd, side = x.rd, x.side
    total = BElement(rd, side)
    for (w, t), c in x.terms.items():
        acc = BElement.torus(rd, side, vneg(t))
        for j in reversed(w):
            acc = multiply(acc, antipode_generator(rd, side, j))
        total = total + acc.scale(c)
    return total


def antipode_generator(rd: RootDatum, side: str, j: int) -> BElement:
    """S(e_j) = -w_j^{-1} e_j and S(f_j) = -f_j w'_j^{-1}, in right-torus form."""
    inv = vneg(unit(rd.rank, j))
    if side == E:
        lhs = BElement.torus(rd, E, inv)
        return -multiply(lhs, BElement.gen(rd, E, j))
    return -BElement.word(rd, F, (j,), torus=inv)


def adjoint(a: BElement, b: BElement) -> BElement:
    """Left adjoint action: sum of a_(1) b S(a_(2))."""
    total = BElement(a.rd, a.side)
    for (k1, k2), c in coproduct(a).terms.items():
        left = BElement.word(a.rd, a.side, k1[0], c, k1[1])
        right = antipode(BElement.word(a.rd, a.side, k2[0], torus=k2[1]))
        total = total + multiply(multiply(left, b), right)
    return total


def adjoint_right(a: BElement, b: BElement) -> BElement:
    """Right adjoint action: sum of S(a_(1)) b a_(2)."""
    total = BElement(a.rd, a.side)
    for (k1, k2), c in coproduct(a).terms.items():
        left = antipode(BElement.word(a.rd, a.side, k1[0], c, k1[1]))
        right = BElement.word(a.rd, a.side, k2[0], torus=k2[1])
        total = total + multiply(multiply(left, b), right)
    return total


def adjoint_serre(rd: RootDatum, i: int, j: int, side: str = E) -> BElement:
    """(ad e_i)^{1 - a_ij}(e_j) with the left adjoint action on the E-side.

    On the F-side the left adjoint of f_i is a plain commutator, so the right
    adjoint action is used: (f_j) (ad_r f_i)^{1 - a_ij}.
    """
    if i == j:
        raise ValueError("i and j must differ")
    x = BElement.gen(rd, side, j)
    gi = BElement.gen(rd, side, i)
    act = adjoint if side == E else adjoint_right
    for _ in range(1 - rd.cartan[i - 1][j - 1]):
        x = act(gi, x)
    return x


def bracket(u: BElement, v: BElement) -> BElement:
    """E-side: uv - <w'_eta, w_zeta> vu.  F-side: vu - <w'_zeta, w_eta>^{-1} uv.

    Here zeta is the weight of u and eta the weight of v.
    """
    u._check(v)
    zeta, eta = u.weight(), v.weight()
    rd = u.rd
    if u.side == E:
        return multiply(u, v) - multiply(v, u).scale(rd.torus_pair(eta, zeta))
    return multiply(v, u) - multiply(u, v).scale(rd.torus_pair(zeta, eta).inverse())
