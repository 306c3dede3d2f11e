"""Built-in example families and the checked-in fixture file.

A fixture line has four ``|``-separated fields::

    name | f: <poly>; g: <poly>; A: <poly>; B: <poly> | key=value (tag); ... | note

Roles may be omitted.  Expected values are integers except ``sigma``, which
lists spectrum entries as ``modulus@n@profile`` separated by commas, where
``modulus`` is the monic polynomial in ``t`` (or ``inf`` for (0:1)) with
spaces removed and ``profile`` is ``deg^exp`` pairs joined by ``.``.  Every
expectation carries a tag saying where the number comes from:
``published``, ``trivial`` (by inspection) or ``derived`` (independent
hand or oracle computation).
"""

from __future__ import annotations

import random
import re
from math import gcd
from dataclasses import dataclass, field
from importlib import resources

from .bipoly import BiPoly, RationalFunctionPair, bi_gcd
from .derivation import Derivation
from .errors import Falsification, PencilError
from .newton import bcount as newton_bcount
from .parser import parse_polynomial
from .spectrum import PencilReport, verify_remarkable_bounds

TAGS = ("published", "trivial", "derived")
X, Y = BiPoly.x(), BiPoly.y()
ONE = BiPoly.const(1)


@dataclass(frozen=True)
class CorpusItem:
    name: str
    roles: dict
    expected: dict  # key -> (value, tag)
    note: str = ""

    @property
    def pair(self) -> RationalFunctionPair | None:
        if "f" not in self.roles:
            return None
        return RationalFunctionPair(self.roles["f"], self.roles.get("g", ONE))

    @property
    def derivation(self) -> Derivation | None:
        if "A" not in self.roles:
            return None
        return Derivation(self.roles["A"], self.roles["B"])

    def to_line(self) -> str:
        roles = "; ".join(f"{k}: {self.roles[k]}" for k in ("f", "g", "A", "B") if k in self.roles)
        exp = "; ".join(f"{k}={v} ({tag})" for k, (v, tag) in self.expected.items())
        return f"{self.name} | {roles} | {exp} | {self.note}"


# ---------------------------------------------------------------------------
# families
# ---------------------------------------------------------------------------


def _sigma_string(entries) -> str:
    return ",".join(f"{m}@{n}@{'.'.join(f'{a}^{b}' for a, b in prof)}" for m, n, prof in entries)


def sharp(k: int) -> CorpusItem:
    if not 1 <= k <= 6:
        raise ValueError("sharp family needs 1 <= k <= 6")
    f = Y * (X**k - 1) + X
    mod = f"t^{k}-1" if k > 1 else "t-1"
    return CorpusItem(
        f"sharp_k{k}",
        {"f": f, "g": ONE},
        {
            "bcount": (k, "published"),
            "rho": (k, "published"),
            "sigma_count": (k + 1, "published"),
            "gamma_count": (1, "published"),
            "deg_R": (0, "derived"),
            "sigma": (_sigma_string([(mod, 2, [(k + 1, 1)]), ("inf", 1, [(1, k + 1)])]), "derived"),
        },
        "one remarkable value per k-th root of unity",
    )


def sparse_pair(e: int, seed: int = 0) -> CorpusItem:
    """A, B supported on X^eY^e, X^(e-1)Y^e, X^eY^(e-1), 1 with random coefficients."""
    if not 1 <= e <= 5:
        raise ValueError("sparse family needs 1 <= e <= 5")
    rng = random.Random(seed * 1000 + e)
    mons = [(e, e), (e - 1, e), (e, e - 1), (0, 0)]
    while True:
        A = BiPoly({m: rng.choice([-5, -4, -3, -2, -1, 1, 2, 3, 4, 5]) for m in mons})
        B = BiPoly({m: rng.choice([-5, -4, -3, -2, -1, 1, 2, 3, 4, 5]) for m in mons})
        if bi_gcd(A, B).is_constant():
            break
    if e > 1:
        expected = {"bcount": (3 * e + 2, "published")}
    else:
        # the closed form needs e > 1; for e = 1 the hull meets N^2 in 3 points
        expected = {"bcount": (3, "derived")}
    return CorpusItem(f"sparse_e{e}", {"A": A, "B": B}, expected, "sparse support, k = 2e")


def dense_random(k: int, seed: int = 0) -> CorpusItem:
    if not 1 <= k <= 6:
        raise ValueError("dense family needs 1 <= k <= 6")
    rng = random.Random(seed * 1000 + k)
    mons = [(i, s - i) for s in range(k + 1) for i in range(s + 1)]
    nz = [c for c in range(-7, 8) if c]
    while True:
        A = BiPoly({m: rng.choice(nz) for m in mons})
        B = BiPoly({m: rng.choice(nz) for m in mons})
        if bi_gcd(A, B).is_constant():
            break
    return CorpusItem(f"dense_k{k}", {"A": A, "B": B},
                      {"bcount": (k * (k + 1) // 2, "published")}, "all coefficients nonzero")


def worked_example() -> CorpusItem:
    return CorpusItem(
        "worked_y_x2",
        {"f": Y, "g": X**2},
        {
            "bcount": (1, "derived"),
            "rho": (1, "published"),
            "sigma_count": (2, "published"),
            "gamma_count": (1, "published"),
            "deg_R": (1, "derived"),
            "sigma": ("t@2@2^1,inf@1@1^2", "derived"),
        },
        "sigma = {(0:1),(1:0)}",
    )


# (name, f, g, sigma entries, note); every member listed by hand
_CONSTRUCTED = [
    ("conic_tangent", X * (X + Y + 1), Y * (X - Y + 1),
     [("t", 2, [(2, 1)]), ("inf", 2, [(2, 1)])],
     "base points not in general position; det(Qf - t Qg) = -6t"),
    ("conic_three_pairs", X * (X + Y + 1), Y * (X - 2 * Y + 3),
     [("t^2+5/6*t", 2, [(2, 1)]), ("inf", 2, [(2, 1)])],
     "det(Qf - t Qg) = -2t(6t+5)"),
    ("conic_cubic_packet", X**2 + Y**2 - 1, X * Y + X - 2,
     [("t^3-4*t+2", 2, [(2, 1)])],
     "det(Qf - t Qg) = -4(t^3 - 4t + 2), irreducible over Q"),
    ("lines_xy", X * Y, ONE,
     [("t", 2, [(2, 1)]), ("inf", 1, [(1, 2)])], "XY and Z^2"),
    ("circle_cone", X**2 + Y**2, ONE,
     [("t", 2, [(2, 1)]), ("inf", 1, [(1, 2)])], "(X+iY)(X-iY) and Z^2"),
    ("sqrt2_lines", X**2 - 2 * Y**2, X + 1,
     [("t^2+4*t", 2, [(2, 1)]), ("inf", 2, [(2, 1)])],
     "(X+2)^2 - 2Y^2 at t = -4; Z(X+Z) at infinity"),
    ("double_line_x2y", X**2 * Y, ONE,
     [("t", 2, [(1, 1), (1, 2)]), ("inf", 1, [(1, 3)])], "X^2 Y and Z^3"),
    ("cusp_ratio", X**3, Y**2,
     [("t", 1, [(1, 3)]), ("inf", 2, [(1, 1), (1, 2)])], "X^3 and Y^2 Z"),
    ("triangle", X * Y * (X + Y - 1), ONE,
     [("t", 3, [(3, 1)]), ("inf", 1, [(1, 3)])],
     "nodal cubic at t = -1/27 stays irreducible"),
    ("pure_square_conic", (X + Y)**2, X * Y + 1,
     [("t-4", 2, [(2, 1)]), ("t", 1, [(1, 2)])],
     "det(Qf - t Qg) = 2t^2(t-4); (X-Y-2)(X-Y+2) at t = 4"),
]


def constructed_pencils() -> list:
    items = []
    for name, f, g, entries, note in _CONSTRUCTED:
        ms = [1 if m == "inf" else _mod_degree(m) for m, _, _ in entries]
        rho = sum(m * (n - 1) for m, (_, n, _) in zip(ms, entries))
        gam = sum(m for m, (_, _, prof) in zip(ms, entries) if gcd(*(e for _, e in prof)) > 1)
        items.append(CorpusItem(
            name, {"f": f, "g": g},
            {"rho": (rho, "derived"), "sigma_count": (sum(ms), "derived"),
             "gamma_count": (gam, "derived"), "sigma": (_sigma_string(entries), "derived")},
            note,
        ))
    return items


def _mod_degree(mod: str) -> int:
    return max(int(e) if e else 1 for e in re.findall(r"t(?:\^(\d+))?", mod))


def corpus_families(seed: int = 0) -> list:
    """Every built-in item, in file order."""
    items = [sharp(k) for k in range(2, 6)]
    items.append(worked_example())
    items += [sparse_pair(e, seed) for e in range(1, 6)]
    items += [dense_random(k, seed) for k in range(1, 7)]
    items += constructed_pencils()
    items.append(CorpusItem(
        "cusp_polynomial", {"f": Y**2 - X**3, "g": ONE},
        {"rho": (0, "derived"), "sigma_count": (1, "derived"), "gamma_count": (1, "trivial"),
         "sigma": ("inf@1@1^3", "derived")},
        "only Z^3 is reducible",
    ))
    return items


def render_corpus(items: list) -> str:
    head = "# name | roles | expectations | note\n"
    return head + "".join(item.to_line() + "\n" for item in items)


# ---------------------------------------------------------------------------
# fixture file
# ---------------------------------------------------------------------------

_EXPECT = re.compile(r"^(\w+)=(.*) \((\w+)\)$")


def parse_corpus_line(line: str) -> CorpusItem:
    parts = [p.strip() for p in line.split("|")]
    if len(parts) != 4:
        raise ValueError(f"fixture line needs 4 fields: {line!r}")
    name, roles_s, exp_s, note = parts
    roles = {}
    for chunk in filter(None, (c.strip() for c in roles_s.split(";"))):
        role, _, text = chunk.partition(":")
        roles[role.strip()] = parse_polynomial(text)
    expected = {}
    for chunk in filter(None, (c.strip() for c in exp_s.split(";"))):
        m = _EXPECT.match(chunk)
        if not m or m.group(3) not in TAGS:
            raise ValueError(f"bad expectation {chunk!r} in {name}")
        key, val, tag = m.groups()
        expected[key] = (val if key == "sigma" else int(val), tag)
    return CorpusItem(name, roles, expected, note)


def load_corpus(text: str | None = None) -> list:
    if text is None:
        text = resources.files("pencilbound").joinpath("data/corpus.txt").read_text("utf-8")
    return [parse_corpus_line(line) for line in text.splitlines()
            if line.strip() and not line.startswith("#")]


# ---------------------------------------------------------------------------
# running
# ---------------------------------------------------------------------------


def sigma_signature(report: PencilReport) -> str:
    out = []
    for e in report.entries:
        mod = "inf" if e.value.modulus is None else e.value.modulus.to_str("t").replace(" ", "")
        out.append((mod, e.n, list(e.multiplicity_profile)))
    return _sigma_string(out)


@dataclass
class CorpusOutcome:
    item: CorpusItem
    computed: dict = field(default_factory=dict)
    error: str | None = None
    falsified: list = field(default_factory=list)

    @property
    def mismatches(self) -> list:
        return [k for k, (v, _) in self.item.expected.items() if self.computed.get(k) != v]

    @property
    def ok(self) -> bool:
        return self.error is None and not self.mismatches and not self.falsified


def run_item(item: CorpusItem, seed: int = 0) -> CorpusOutcome:
    out = CorpusOutcome(item)
    try:
        D = item.derivation
        if D is not None:
            out.computed["bcount"] = newton_bcount(D).bcount
        r = item.pair
        if r is not None:
            v = verify_remarkable_bounds(r, D, seed)
            rep = v.report
            out.computed.update(
                bcount=v.bcount, rho=rep.rho, sigma_count=rep.sigma_count,
                gamma_count=rep.gamma_count, deg_R=rep.deg_R, sigma=sigma_signature(rep),
            )
            out.falsified = v.falsified
    except (PencilError, Falsification) as exc:
        out.error = f"{type(exc).__name__}: {exc}"
    return out
