"""Parametric standard-cell library and its text file format.

The library file is line-oriented key/value sections::

    [library]
    wire_cap_per_fanout = 0.15
    default_output_load = 1.0

    [cell NAND2]
    inputs = 2
    tt = 0x7
    area = 1.5
    input_caps = 1.0 1.0
    intrinsic_delay = 0.07
    load_slope = 0.07

Truth tables are hex-encoded over 2^inputs bits; bit i is the output for
the input minterm whose j-th bit is pin j's value.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations


@dataclass(frozen=True)
class Cell:
    name: str
    inputs: int
    tt: int
    area: float
    input_caps: tuple
    intrinsic_delay: float
    load_slope: float

    def __post_init__(self):
        if self.inputs < 1 or self.inputs > 4:
            raise ValueError("cell %s: 1..4 inputs supported" % self.name)
        if len(self.input_caps) != self.inputs:
            raise ValueError("cell %s: input_caps arity mismatch" % self.name)
        if self.area <= 0:
            raise ValueError("cell %s: area must be positive" % self.name)
        if self.tt >> (1 << self.inputs):
            raise ValueError("cell %s: truth table too wide" % self.name)


@dataclass(frozen=True)
class Match:
    """One way a cell realizes a cut function.

    pin_of_var[j] is the cell pin fed by cut leaf j; in_negated[j] says the
    leaf signal must be inverted first; out_negated says the cell output is
    the complement of the cut function.
    """
    cell: Cell
    pin_of_var: tuple
    in_negated: tuple
    out_negated: bool


@dataclass
class CellLibrary:
    cells: list
    wire_cap_per_fanout: float = 0.15
    default_output_load: float = 1.0
    _match: dict = field(default_factory=dict, repr=False)
    _by_name: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._by_name = {c.name: c for c in self.cells}
        if "INV" not in self._by_name:
            raise ValueError("library must contain an INV cell")
        if not any(self._covers_and2(c) for c in self.cells):
            raise ValueError("library must contain a 2-input AND-capable cell")
        self._build_match_tables()

    @staticmethod
    def _covers_and2(cell):
        return cell.inputs == 2 and cell.tt in (0b1000, 0b0111)

    def cell(self, name: str) -> Cell:
        return self._by_name[name]

    @property
    def inverter(self) -> Cell:
        return self._by_name["INV"]

    def _build_match_tables(self):
        # (arity, tt) -> list of Match, deterministic (area, name) order
        tables: dict = {}
        for cell in sorted(self.cells, key=lambda c: (c.area, c.name)):
            k = cell.inputs
            mask = (1 << (1 << k)) - 1
            seen = set()
            for perm in permutations(range(k)):
                for phases in range(1 << k):
                    tt = 0
                    for m in range(1 << k):
                        idx = 0
                        for var in range(k):
                            bit = (m >> var) & 1
                            if (phases >> var) & 1:
                                bit ^= 1
                            if bit:
                                idx |= 1 << perm[var]
                        if (cell.tt >> idx) & 1:
                            tt |= 1 << m
                    for out_neg, t in ((False, tt), (True, tt ^ mask)):
                        key = (k, t)
                        dedup = (cell.name, t, out_neg)
                        if dedup in seen:
                            continue
                        seen.add(dedup)
                        match = Match(
                            cell=cell,
                            pin_of_var=perm,
                            in_negated=tuple((phases >> v) & 1 == 1
                                             for v in range(k)),
                            out_negated=out_neg,
                        )
                        tables.setdefault(key, []).append(match)
        self._match = tables

    def matches(self, tt: int, arity: int):
        return self._match.get((arity, tt), ())


def default_library() -> CellLibrary:
    """Bundled library: multi-input cells are cheaper in area than their
    decompositions but slower per stage, so mapping choices are nontrivial."""

    def c(name, inputs, tt, area, cap, d, s):
        return Cell(name, inputs, tt, area, tuple([cap] * inputs), d, s)

    cells = [
        c("INV", 1, 0b01, 1.0, 1.0, 0.05, 0.06),
        c("NAND2", 2, 0b0111, 1.5, 1.0, 0.07, 0.07),
        c("NOR2", 2, 0b0001, 1.5, 1.0, 0.08, 0.09),
        c("AND2", 2, 0b1000, 2.0, 1.0, 0.10, 0.07),
        c("OR2", 2, 0b1110, 2.0, 1.0, 0.11, 0.08),
        c("XOR2", 2, 0b0110, 3.0, 1.3, 0.14, 0.09),
        c("NAND3", 3, 0x7F, 2.2, 1.1, 0.10, 0.09),
        # AOI21(a,b,c) = !((a&b)|c)
        c("AOI21", 3, 0x07, 2.2, 1.1, 0.09, 0.10),
        # OAI21(a,b,c) = !((a|b)&c)
        c("OAI21", 3, 0x1F, 2.2, 1.1, 0.09, 0.10),
        # MUX2(s,a,b) = s ? a : b
        c("MUX2", 3, 0xD8, 3.2, 1.2, 0.13, 0.10),
        c("AND4", 4, 1 << 15, 3.5, 1.1, 0.16, 0.10),
    ]
    return CellLibrary(cells, wire_cap_per_fanout=0.15, default_output_load=1.0)


def emit_library(lib: CellLibrary) -> str:
    out = ["[library]",
           "wire_cap_per_fanout = %r" % lib.wire_cap_per_fanout,
           "default_output_load = %r" % lib.default_output_load]
    for cell in lib.cells:
        out.append("")
        out.append("[cell %s]" % cell.name)
        out.append("inputs = %d" % cell.inputs)
        out.append("tt = 0x%x" % cell.tt)
        out.append("area = %r" % cell.area)
        out.append("input_caps = %s" % " ".join(repr(x) for x in cell.input_caps))
        out.append("intrinsic_delay = %r" % cell.intrinsic_delay)
        out.append("load_slope = %r" % cell.load_slope)
    return "\n".join(out) + "\n"


class LibraryError(ValueError):
    pass


def parse_library(text: str) -> CellLibrary:
    section = None
    header = {}
    cells = []
    cur = None

    def finish():
        if cur is None:
            return
        try:
            cells.append(Cell(
                name=cur["name"],
                inputs=int(cur["inputs"]),
                tt=int(cur["tt"], 0),
                area=float(cur["area"]),
                input_caps=tuple(float(x) for x in cur["input_caps"].split()),
                intrinsic_delay=float(cur["intrinsic_delay"]),
                load_slope=float(cur["load_slope"]),
            ))
        except KeyError as e:
            raise LibraryError("cell %s: missing field %s"
                               % (cur.get("name"), e)) from None

    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise LibraryError("malformed section header %r" % line)
            finish()
            cur = None
            inner = line[1:-1].strip()
            if inner == "library":
                section = "library"
            elif inner.startswith("cell "):
                section = "cell"
                cur = {"name": inner[5:].strip()}
            else:
                raise LibraryError("unknown section %r" % inner)
            continue
        if "=" not in line:
            raise LibraryError("malformed line %r" % line)
        key, _, val = line.partition("=")
        key = key.strip()
        val = val.strip()
        if section == "library":
            header[key] = float(val)
        elif section == "cell":
            cur[key] = val
        else:
            raise LibraryError("key/value outside any section: %r" % line)
    finish()
    try:
        return CellLibrary(
            cells,
            wire_cap_per_fanout=header["wire_cap_per_fanout"],
            default_output_load=header["default_output_load"],
        )
    except KeyError as e:
        raise LibraryError("missing library header field %s" % e) from None


def load_library(path) -> CellLibrary:
    with open(path) as fh:
        return parse_library(fh.read())
