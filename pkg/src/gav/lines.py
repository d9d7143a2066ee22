"""Plane curves ``f(Z, T) = 0`` isomorphic to a line, with parametrization witnesses.

A witness is a triple ``(Z(s), T(s), S(Z, T))``.  It certifies
``k[Z, T]/(f) = k[s]`` when

* ``f(Z(s), T(s)) = 0``: the map ``Z, T -> Z(s), T(s)`` factors through ``k[Z, T]/(f)``;
* ``S(Z(s), T(s)) = s``: that map is onto ``k[s]``;
* the kernel of ``k[Z, T] -> k[s]``, computed by elimination, is exactly ``(f)``.

The first two identities alone do not suffice: ``f = Z*T`` with ``Z(s) = 0``,
``T(s) = s``, ``S = Z + T`` satisfies both, while ``Z*T`` is reducible.

Whether a line is *trivial* (a coordinate of ``k[Z, T]``) is not decided
here; it is carried as a trusted flag with a citation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .checks import CheckReport
from .errors import GavError, MissingWitness
from .field import FieldSpec, make_field
from .groebner import IdealHandle, eliminate, ideal_equal
from .parse import parse_poly
from .poly import MultiPoly

ZT = ("Z", "T")
S_VARS = ("s",)

LITERATURE_CITE = ("Nagata (1972) and Segre (1957): Z^(p^e) + T + T^(sp) is a non-trivial line "
                   "when p^e does not divide sp and sp does not divide p^e")


@dataclass(frozen=True)
class LineEntry:
    f: MultiPoly  # over ("Z", "T")
    p: int
    nontrivial: bool = False
    cite: str = ""
    witness: tuple | None = None  # (Z(s), T(s)) over ("s",) and S over ("Z", "T")
    name: str = ""
    d: int = 1

    @property
    def field(self) -> FieldSpec:
        return self.f.field

    @property
    def trusted_nontrivial(self) -> bool:
        return self.nontrivial and bool(self.cite)


def line_report(entry: LineEntry) -> CheckReport:
    if entry.witness is None:
        raise MissingWitness(f"line {entry.name or entry.f} has no parametrization witness")
    Zs, Ts, S = entry.witness
    F = entry.f.field
    images = {"Z": Zs.embed(S_VARS), "T": Ts.embed(S_VARS)}
    rep = CheckReport()
    on_curve = entry.f.compose(images, S_VARS)
    rep.add("on_curve", on_curve.is_zero(), "f(Z(s), T(s)) = 0",
            None if on_curve.is_zero() else str(on_curve))
    s = MultiPoly.var(F, S_VARS, "s")
    back = S.compose(images, S_VARS) - s
    rep.add("inverse", back.is_zero(), "S(Z(s), T(s)) = s", None if back.is_zero() else str(back))
    # kernel of k[Z, T] -> k[s]
    allv = ("s",) + ZT
    graph = [MultiPoly.var(F, allv, "Z") - Zs.embed(allv), MultiPoly.var(F, allv, "T") - Ts.embed(allv)]
    kernel = [g.embed(ZT) for g in eliminate(graph, {"s"})]
    same = bool(kernel) and ideal_equal(IdealHandle(kernel), IdealHandle([entry.f]))
    rep.add("kernel_is_f", same, "kernel of Z, T -> Z(s), T(s) is (f)",
            None if same else "; ".join(str(k) for k in kernel) or "0")
    return rep


def verify_line_witness(entry: LineEntry) -> bool:
    return line_report(entry).passed


# -- the Z^(p^e) + T + T^(sp) family -------------------------------------------------------

def segre_line(p: int, e: int, s: int, d: int = 1) -> LineEntry:
    """``Z^(p^e) + T + T^(s*p)`` with an explicit parametrization.

    For ``G = Z^(p^e) + a*T^(sp) + b*T`` and ``W = Z^(p^(e-1)) + a^(1/p)*T^s`` one has
    ``G = W^p + b*T``, so on the curve ``T = -W^p / b`` and
    ``k[Z, T]/(G) = k[Z, W]/(Z^(p^(e-1)) + a^(1/p)(-1/b)^s W^(sp) - W)``: the same
    shape with ``e - 1``.  At ``e = 0`` the curve is the graph
    ``Z = -a*T^(sp) - b*T``.
    """
    F = make_field(p, d)
    Zv, Tv = (MultiPoly.var(F, ZT, n) for n in ZT)
    f = Zv ** (p ** e) + Tv + Tv ** (s * p)
    Zs, Ts, S = _segre_witness(F, e, s, a=1, b=1)
    nontrivial = e >= 1 and (s * p) % (p ** e) != 0 and (p ** e) % (s * p) != 0
    return LineEntry(f, p, nontrivial, LITERATURE_CITE if nontrivial else "",
                     (Zs, Ts, S), f"p{p}_e{e}_s{s}", d)


def _segre_witness(F, e, s, a, b):
    sv = MultiPoly.var(F, S_VARS, "s")
    Zv, Tv = (MultiPoly.var(F, ZT, n) for n in ZT)
    p = F.p
    if e == 0:
        Zs = (sv ** (s * p)).scale(F.neg(a)) - sv.scale(b)
        return Zs, sv, Tv
    a_root = F.pth_root(a)
    binv = F.inv(b)
    a_new = F.mul(a_root, F.pow(F.neg(binv), s))
    Zs, Ws, S_inner = _segre_witness(F, e - 1, s, a_new, F.neg(1))
    Ts = (Ws ** p).scale(F.neg(binv))
    W_of_ZT = Zv ** (p ** (e - 1)) + (Tv ** s).scale(a_root)
    S = S_inner.compose({"Z": Zv, "T": W_of_ZT}, ZT)
    return Zs, Ts, S


# -- file format -----------------------------------------------------------------------------

class LineFormatError(GavError):
    pass


_NONTRIVIAL = re.compile(r'^nontrivial\s+(true|false)\s*(?:cite\s*=\s*"([^"]*)")?$', re.I)


def parse_line_record(lines, path=None, field_override=None) -> LineEntry:
    p = None
    d = 1
    vals = {}
    nontrivial, cite, name = False, "", ""
    for lineno, raw in lines:
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"{path or '<input>'}:{lineno}"
        if re.fullmatch(r"p\s+\d+(\^\d+)?", line):
            txt = line.split()[1]
            p, _, dd = txt.partition("^")
            p, d = int(p), int(dd or 1)
        elif line.startswith("name"):
            name = line[4:].strip()
        elif line.lower().startswith("nontrivial"):
            m = _NONTRIVIAL.match(line)
            if not m:
                raise LineFormatError(f"{where}: bad nontrivial line {line!r}")
            nontrivial, cite = m.group(1).lower() == "true", m.group(2) or ""
        else:
            m = re.match(r"^(f|Z\(s\)|T\(s\)|S)\s*=\s*(.+)$", line)
            if not m:
                raise LineFormatError(f"{where}: unrecognized line {line!r}")
            vals[m.group(1)] = (m.group(2), where)
    if p is None:
        raise LineFormatError(f"{path or '<input>'}: missing 'p' line")
    if "f" not in vals:
        raise LineFormatError(f"{path or '<input>'}: missing 'f = ...' line")
    F = field_override or make_field(p, d)

    def P(key, variables):
        text, where = vals[key]
        try:
            return parse_poly(text, variables, F)
        except GavError as exc:
            raise LineFormatError(f"{where}: {exc}") from exc
    f = P("f", ZT)
    wkeys = ("Z(s)", "T(s)", "S")
    have = [k in vals for k in wkeys]
    if any(have) and not all(have):
        raise LineFormatError(f"{path or '<input>'}: witness needs Z(s), T(s) and S")
    witness = (P("Z(s)", S_VARS), P("T(s)", S_VARS), P("S", ZT)) if all(have) else None
    return LineEntry(f, p, nontrivial, cite, witness, name, F.d)


def _records(text):
    block, out = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        if raw.strip() == "---":
            if block:
                out.append(block)
            block = []
        else:
            block.append((lineno, raw))
    if any(r.split("#", 1)[0].strip() for _, r in block):
        out.append(block)
    return out


def parse_lines(text, path=None):
    return [parse_line_record(b, path) for b in _records(text)
            if any(r.split("#", 1)[0].strip() for _, r in b)]


def load_line(path) -> LineEntry:
    path = Path(path)
    entries = parse_lines(path.read_text(encoding="utf-8"), path)
    if len(entries) != 1:
        raise LineFormatError(f"{path}: expected one line entry, found {len(entries)}")
    return entries[0]


def format_line(entry: LineEntry) -> str:
    out = []
    if entry.name:
        out.append(f"name {entry.name}")
    out.append(f"p {entry.p}" + (f"^{entry.d}" if entry.d > 1 else ""))
    out.append(f"f = {entry.f}")
    cite = f' cite="{entry.cite}"' if entry.cite else ""
    out.append(f"nontrivial {'true' if entry.nontrivial else 'false'}{cite}")
    if entry.witness:
        Zs, Ts, S = entry.witness
        out += [f"Z(s) = {Zs}", f"T(s) = {Ts}", f"S = {S}"]
    return "\n".join(out) + "\n"


def catalog() -> list:
    text = resources.files("gav").joinpath("data/lines.txt").read_text(encoding="utf-8")
    return parse_lines(text, "lines.txt")


def default_line(p: int) -> LineEntry:
    for entry in catalog():
        if entry.p == p and entry.nontrivial:
            return entry
    raise LookupError(f"no non-trivial line for p = {p} in the catalog")
