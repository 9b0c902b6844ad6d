"""Cut-based technology mapping and static timing analysis.

map() covers the AIG with library cells by a delay-oriented dynamic
program over k-feasible cuts (arrival first, area flow to break ties);
sta() then computes exact arrival times on the chosen netlist with a
linear load-dependent delay model.  ground_truth() composes the two.

Net naming: PIs are "pi{i}" (0-based), the positive function of AND node
v is "n{v}", its complement "n{v}_b" ("pi{i}_b" for inverted PIs), and
"const0"/"const1" are driverless pseudo-nets.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .aig import Aig, fanout_counts, lit
from .cuts import enumerate_cuts
from .library import CellLibrary


@dataclass
class Gate:
    cell: str
    inputs: list
    output: str


@dataclass
class MappedNetlist:
    gates: list
    pi_nets: list
    po_nets: list
    arrival: dict = field(default_factory=dict)
    max_delay: float = 0.0
    total_area: float = 0.0


@dataclass(frozen=True)
class GroundTruth:
    delay: float
    area: float


class MappingError(RuntimeError):
    """No cell covers a required cut function (defective library)."""


def _phase_net(node: int, neg: int, num_pis: int) -> str:
    if node == 0:
        return "const1" if neg else "const0"
    if node <= num_pis:
        return "pi%d%s" % (node - 1, "_b" if neg else "")
    return "n%d%s" % (node, "_b" if neg else "")


def map(aig: Aig, lib: CellLibrary, k: int = 4, cut_limit: int = 8) -> MappedNetlist:
    cuts, flow = enumerate_cuts(aig, k=k, limit=cut_limit)
    fo = fanout_counts(aig)
    est_load = lib.wire_cap_per_fanout + lib.default_output_load
    inv = lib.inverter
    inv_d = inv.intrinsic_delay + inv.load_slope * est_load

    num_pis = aig.num_pis
    nn = aig.num_nodes
    arr = [0.0] * nn
    choice = [None] * nn      # (leaves, match) for concrete AND nodes
    alias = [None] * nn       # literal this node is equivalent to, or None

    def resolve(l: int) -> int:
        while alias[l >> 1] is not None:
            l = alias[l >> 1] ^ (l & 1)
        return l

    def cut_af(leaves) -> float:
        total = 1.0
        for leaf in leaves:
            total += flow[leaf] / max(fo[leaf], 1)
        return total

    base = num_pis + 1
    for i in range(aig.num_ands):
        node = base + i
        best = None
        for leaves, tt in cuts[node][1:]:
            if len(leaves) == 0:
                # node function is a constant
                alias[node] = tt & 1
                best = None
                break
            if len(leaves) == 1:
                neg = 1 if tt == 0b01 else 0
                rl = resolve(lit(leaves[0], neg))
                a = arr[rl >> 1] + (inv_d if rl & 1 else 0.0)
                key = (a, 0.0, 0.0, "")
                if best is None or key < best[0]:
                    best = (key, ("alias", rl))
                continue
            af = cut_af(leaves)
            for match in lib.matches(tt, len(leaves)):
                cell = match.cell
                stage = cell.intrinsic_delay + cell.load_slope * est_load
                worst = 0.0
                for j, leaf in enumerate(leaves):
                    rl = resolve(lit(leaf, 1 if match.in_negated[j] else 0))
                    a = arr[rl >> 1] + (inv_d if rl & 1 else 0.0)
                    if a > worst:
                        worst = a
                a = worst + stage + (inv_d if match.out_negated else 0.0)
                key = (a, af, cell.area, cell.name)
                if best is None or key < best[0]:
                    best = (key, ("gate", leaves, match))
        if alias[node] is not None:
            continue
        if best is None:
            raise MappingError("no library match for node %d" % node)
        key, sel = best
        if sel[0] == "alias":
            alias[node] = sel[1]
            arr[node] = key[0]
        else:
            choice[node] = (sel[1], sel[2])
            arr[node] = key[0]

    # requirement walk: which nodes/phases must be materialized
    req_phase: dict = {}
    pi_neg: set = set()
    visited: set = set()
    stack = []

    def require(cl: int):
        node = cl >> 1
        if node == 0:
            return
        if node <= num_pis:
            if cl & 1:
                pi_neg.add(node)
            return
        req_phase.setdefault(node, set()).add(cl & 1)
        if node not in visited:
            visited.add(node)
            stack.append(node)

    po_resolved = [resolve(po) for po in aig.pos]
    for rl in po_resolved:
        require(rl)
    while stack:
        node = stack.pop()
        leaves, match = choice[node]
        for j, leaf in enumerate(leaves):
            rl = resolve(lit(leaf, 1 if match.in_negated[j] else 0))
            require(rl)

    gates = []
    for p in sorted(pi_neg):
        gates.append(Gate("INV", [_phase_net(p, 0, num_pis)],
                          _phase_net(p, 1, num_pis)))
    for node in sorted(req_phase):
        leaves, match = choice[node]
        cell = match.cell
        ins = [None] * cell.inputs
        for j, leaf in enumerate(leaves):
            rl = resolve(lit(leaf, 1 if match.in_negated[j] else 0))
            ins[match.pin_of_var[j]] = _phase_net(rl >> 1, rl & 1, num_pis)
        own = 1 if match.out_negated else 0
        gates.append(Gate(cell.name, ins, _phase_net(node, own, num_pis)))
        for phase in sorted(req_phase[node]):
            if phase != own:
                gates.append(Gate("INV", [_phase_net(node, own, num_pis)],
                                  _phase_net(node, phase, num_pis)))

    po_nets = [_phase_net(rl >> 1, rl & 1, num_pis) for rl in po_resolved]
    pi_nets = [_phase_net(p, 0, num_pis) for p in range(1, num_pis + 1)]
    return MappedNetlist(gates=gates, pi_nets=pi_nets, po_nets=po_nets)


def sta(netlist: MappedNetlist, lib: CellLibrary) -> GroundTruth:
    """Arrival-time propagation with load = pin caps + wire cap per fanout
    (+ the default output load once, on nets driving a PO)."""
    load: dict = {}
    fanout: dict = {}
    for gate in netlist.gates:
        cell = lib.cell(gate.cell)
        for p, net in enumerate(gate.inputs):
            load[net] = load.get(net, 0.0) + cell.input_caps[p]
            fanout[net] = fanout.get(net, 0) + 1
    po_refs: dict = {}
    for net in netlist.po_nets:
        po_refs[net] = po_refs.get(net, 0) + 1
    arrival: dict = {net: 0.0 for net in netlist.pi_nets}
    arrival["const0"] = arrival["const1"] = 0.0
    area = 0.0
    for gate in netlist.gates:
        cell = lib.cell(gate.cell)
        net = gate.output
        ld = load.get(net, 0.0) + lib.wire_cap_per_fanout * (
            fanout.get(net, 0) + po_refs.get(net, 0))
        if net in po_refs:
            ld += lib.default_output_load
        worst = max((arrival.get(n, 0.0) for n in gate.inputs), default=0.0)
        arrival[net] = worst + cell.intrinsic_delay + cell.load_slope * ld
        area += cell.area
    delay = max((arrival.get(net, 0.0) for net in netlist.po_nets), default=0.0)
    netlist.arrival = arrival
    netlist.max_delay = delay
    netlist.total_area = area
    return GroundTruth(delay=delay, area=area)


def ground_truth(aig: Aig, lib: CellLibrary, k: int = 4,
                 cut_limit: int = 8) -> GroundTruth:
    if aig.num_ands == 0 and not any(po >> 1 and po & 1 for po in aig.pos):
        return GroundTruth(0.0, 0.0)
    return sta(map(aig, lib, k=k, cut_limit=cut_limit), lib)


def simulate_netlist(netlist: MappedNetlist, lib: CellLibrary,
                     pi_values, nbits: int):
    """Bit-parallel netlist simulation; returns per-PO packed values."""
    mask = (1 << nbits) - 1
    vals = {"const0": 0, "const1": mask}
    for net, v in zip(netlist.pi_nets, pi_values):
        vals[net] = v & mask
    for gate in netlist.gates:
        cell = lib.cell(gate.cell)
        ins = [vals[n] for n in gate.inputs]
        out = 0
        for m in range(1 << cell.inputs):
            if not (cell.tt >> m) & 1:
                continue
            term = mask
            for j, v in enumerate(ins):
                term &= v if (m >> j) & 1 else v ^ mask
                if not term:
                    break
            out |= term
        vals[gate.output] = out
    return [vals[n] for n in netlist.po_nets]
