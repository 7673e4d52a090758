"""Gate-level circuit genomes.

A genome is a plain tuple of immutable Gate records, applied left to right.
Qubits are numbered from 1; qubit 1 is the most significant bit of a basis
state label. Rotation gates implement exp(-i*theta*sigma/2); CPhase multiplies
the amplitude of basis states whose target bit is 1 (and all control bits are
1) by exp(i*theta). Oracle negates the amplitude of a hidden marked basis
state supplied at simulation time. Angles are stored canonically in [0, 2*pi).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import IntEnum

import numpy as np

TWO_PI = 2.0 * math.pi


class GateKind(IntEnum):
    ROT_Y = 0
    ROT_X = 1
    CPHASE = 2
    SWAP = 3
    ORACLE = 4


ROTATIONS = (GateKind.ROT_Y, GateKind.ROT_X)
ANGLED = (GateKind.ROT_Y, GateKind.ROT_X, GateKind.CPHASE)

_MNEMONIC = {
    GateKind.ROT_Y: "Y",
    GateKind.ROT_X: "X",
    GateKind.CPHASE: "P",
    GateKind.SWAP: "SWAP",
    GateKind.ORACLE: "ORACLE",
}
_KIND_BY_MNEMONIC = {v: k for k, v in _MNEMONIC.items()}


def canonical_angle(theta: float) -> float:
    """Reduce an angle to [0, 2*pi). Values already in range pass unchanged."""
    theta = math.fmod(theta, TWO_PI)
    if theta < 0.0:
        theta += TWO_PI
    if theta >= TWO_PI:  # rounding of tiny negatives can land on 2*pi exactly
        theta = 0.0
    return theta


@dataclass(frozen=True, slots=True)
class Gate:
    """One genome element. Use the roty/rotx/cphase/swap/oracle helpers."""

    kind: GateKind
    target: int = 0
    angle: float = 0.0
    controls: frozenset[int] = frozenset()
    target2: int = 0
    # Structure fields used for merging, duplicate detection and the packed
    # simulator encoding; derived, qubit-count independent.
    _f1: int = field(init=False, repr=False, compare=False, default=0)
    _f2: int = field(init=False, repr=False, compare=False, default=0)

    def __post_init__(self) -> None:
        kind = self.kind
        if kind in ROTATIONS:
            if self.target < 1:
                raise ValueError(f"rotation target must be >= 1, got {self.target}")
            if self.controls or self.target2:
                raise ValueError("rotation gates take a single target qubit")
            object.__setattr__(self, "angle", canonical_angle(self.angle))
            f1, f2 = self.target, 0
        elif kind is GateKind.CPHASE:
            controls = frozenset(self.controls)
            if self.target < 1 or any(c < 1 for c in controls):
                raise ValueError("CPhase qubit indices must be >= 1")
            if self.target in controls:
                raise ValueError("CPhase target cannot also be a control")
            if self.target2:
                raise ValueError("CPhase has no second target")
            object.__setattr__(self, "controls", controls)
            object.__setattr__(self, "angle", canonical_angle(self.angle))
            mask = 1 << (self.target - 1)
            for c in controls:
                mask |= 1 << (c - 1)
            f1, f2 = mask, self.target
        elif kind is GateKind.SWAP:
            a, b = self.target, self.target2
            if a < 1 or b < 1:
                raise ValueError("Swap qubit indices must be >= 1")
            if a == b:
                raise ValueError("Swap targets must be distinct")
            if self.controls:
                raise ValueError("Swap gates take no controls")
            if self.angle != 0.0:
                raise ValueError("Swap gates carry no angle")
            if a > b:
                a, b = b, a
            object.__setattr__(self, "target", a)
            object.__setattr__(self, "target2", b)
            f1, f2 = a, b
        elif kind is GateKind.ORACLE:
            if self.target or self.target2 or self.controls or self.angle != 0.0:
                raise ValueError("Oracle gates take no parameters")
            f1 = f2 = 0
        else:
            raise ValueError(f"unknown gate kind {kind!r}")
        object.__setattr__(self, "_f1", f1)
        object.__setattr__(self, "_f2", f2)

    def qubits(self) -> frozenset[int]:
        """Qubits this gate touches; empty for Oracle (it acts on all)."""
        if self.kind is GateKind.ORACLE:
            return frozenset()
        if self.kind is GateKind.SWAP:
            return frozenset((self.target, self.target2))
        return self.controls | {self.target}


Genome = tuple[Gate, ...]


def roty(target: int, angle: float) -> Gate:
    return Gate(GateKind.ROT_Y, target=target, angle=angle)


def rotx(target: int, angle: float) -> Gate:
    return Gate(GateKind.ROT_X, target=target, angle=angle)


def cphase(target: int, angle: float, controls: tuple[int, ...] | frozenset[int] = ()) -> Gate:
    return Gate(GateKind.CPHASE, target=target, angle=angle, controls=frozenset(controls))


def swap(a: int, b: int) -> Gate:
    return Gate(GateKind.SWAP, target=a, target2=b)


def oracle() -> Gate:
    return Gate(GateKind.ORACLE)


def invert_gate(gate: Gate) -> Gate:
    """Inverse gate: negated canonical angle; Swap and Oracle are self-inverse."""
    if gate.kind in ANGLED:
        return Gate(
            gate.kind,
            target=gate.target,
            angle=canonical_angle(-gate.angle),
            controls=gate.controls,
        )
    return gate


def structure_key(genome: Genome) -> tuple:
    """Genome identity with angles ignored: kinds, targets and controls in order."""
    return tuple((g.kind, g._f1, g._f2) for g in genome)


def genome_counts(genome: Genome) -> tuple[int, int, int, int, int]:
    """Gate counts per kind, indexed by GateKind value."""
    counts = [0, 0, 0, 0, 0]
    for g in genome:
        counts[g.kind] += 1
    return tuple(counts)


def merge_adjacent(genome: Genome) -> Genome:
    """Collapse runs of compatible neighbours.

    Equal-structure consecutive rotations or CPhase gates merge into one gate
    with the summed canonical angle; exact-zero results are dropped, as are
    zero-angle gates already present. Identical consecutive Swaps cancel.
    Cancellations cascade until a fixed point. Oracle pairs are left alone:
    they do square to the identity, but collapsing them would silently erase
    oracle-count structure that the search trades against error, and the
    cheapest error-neutral insertion available to it.
    """
    out: list[Gate] = []
    for gate in genome:
        if gate.kind in ANGLED and gate.angle == 0.0:
            continue
        out.append(gate)
        while len(out) >= 2:
            a, b = out[-2], out[-1]
            if a.kind != b.kind or a._f1 != b._f1 or a._f2 != b._f2:
                break
            if a.kind is GateKind.ORACLE:
                break
            del out[-2:]
            if a.kind in ANGLED:
                angle = canonical_angle(a.angle + b.angle)
                if angle != 0.0:
                    out.append(
                        Gate(a.kind, target=a.target, angle=angle, controls=a.controls)
                    )
            # an identical Swap pair vanishes entirely
    return tuple(out)


def _draw_cphase_qubits(n: int, rng: np.random.Generator) -> tuple[int, frozenset[int]]:
    """Each qubit is a control with probability 1/2; target uniform among the rest.

    If every qubit came out a control, one of them (uniform) is released to
    serve as the target.
    """
    controls = [q for q in range(1, n + 1) if rng.random() < 0.5]
    if len(controls) == n:
        idx = int(rng.integers(0, n))
        target = controls.pop(idx)
    else:
        free = [q for q in range(1, n + 1) if q not in controls]
        target = free[int(rng.integers(0, len(free)))]
    return target, frozenset(controls)


def random_gate(n: int, kinds: tuple[GateKind, ...], rng: np.random.Generator) -> Gate:
    """Draw a uniform kind from `kinds` with uniformly drawn parameters."""
    kind = kinds[int(rng.integers(0, len(kinds)))]
    if kind in ROTATIONS:
        return Gate(kind, target=int(rng.integers(1, n + 1)), angle=rng.random() * TWO_PI)
    if kind is GateKind.CPHASE:
        target, controls = _draw_cphase_qubits(n, rng)
        return Gate(kind, target=target, angle=rng.random() * TWO_PI, controls=controls)
    if kind is GateKind.SWAP:
        a = int(rng.integers(1, n + 1))
        b = int(rng.integers(1, n))
        if b >= a:
            b += 1
        return Gate(kind, target=a, target2=b)
    return Gate(GateKind.ORACLE)


def random_genome(
    n: int, kinds: tuple[GateKind, ...], length: int, rng: np.random.Generator
) -> Genome:
    return tuple(random_gate(n, kinds, rng) for _ in range(length))


def mutate_discrete(gate: Gate, n: int, rng: np.random.Generator) -> Gate:
    """Redraw the qubit assignment of a gate, keeping its kind and angle."""
    kind = gate.kind
    if kind in ROTATIONS:
        return Gate(kind, target=int(rng.integers(1, n + 1)), angle=gate.angle)
    if kind is GateKind.CPHASE:
        target, controls = _draw_cphase_qubits(n, rng)
        return Gate(kind, target=target, angle=gate.angle, controls=controls)
    if kind is GateKind.SWAP:
        a = int(rng.integers(1, n + 1))
        b = int(rng.integers(1, n))
        if b >= a:
            b += 1
        return Gate(kind, target=a, target2=b)
    return gate


def mutate_continuous(
    gate: Gate, n: int, rng: np.random.Generator, sigma: float = 0.2
) -> Gate:
    """Perturb the angle by N(0, sigma^2); parameterless gates fall back to discrete."""
    if gate.kind in ANGLED:
        return Gate(
            gate.kind,
            target=gate.target,
            angle=canonical_angle(gate.angle + rng.normal(0.0, sigma)),
            controls=gate.controls,
        )
    return mutate_discrete(gate, n, rng)


def serialize(genome: Genome) -> str:
    """Render a genome in the circuit text format, one gate per line."""
    lines = []
    for g in genome:
        if g.kind in ROTATIONS:
            lines.append(f"{_MNEMONIC[g.kind]} {g.target} {g.angle!r}")
        elif g.kind is GateKind.CPHASE:
            line = f"P {g.target} {g.angle!r}"
            if g.controls:
                line += " c:" + ",".join(str(c) for c in sorted(g.controls))
            lines.append(line)
        elif g.kind is GateKind.SWAP:
            lines.append(f"SWAP {g.target} {g.target2}")
        else:
            lines.append("ORACLE")
    return "\n".join(lines) + ("\n" if lines else "")


def _parse_qubit(token: str, n: int, lineno: int) -> int:
    try:
        q = int(token)
    except ValueError:
        raise ValueError(f"line {lineno}: expected a qubit index, got {token!r}") from None
    if not 1 <= q <= n:
        raise ValueError(f"line {lineno}: qubit index {q} outside 1..{n}")
    return q


def _parse_angle(token: str, lineno: int) -> float:
    try:
        return float(token)
    except ValueError:
        raise ValueError(f"line {lineno}: expected an angle, got {token!r}") from None


def parse(text: str, n: int) -> Genome:
    """Parse the circuit text format; raises ValueError with a line number."""
    gates: list[Gate] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        mnemonic = tokens[0].upper()
        kind = _KIND_BY_MNEMONIC.get(mnemonic)
        if kind is None:
            raise ValueError(f"line {lineno}: unknown gate {tokens[0]!r}")
        try:
            if kind in ROTATIONS:
                if len(tokens) != 3:
                    raise ValueError(f"line {lineno}: {mnemonic} takes target and angle")
                gates.append(
                    Gate(
                        kind,
                        target=_parse_qubit(tokens[1], n, lineno),
                        angle=_parse_angle(tokens[2], lineno),
                    )
                )
            elif kind is GateKind.CPHASE:
                if len(tokens) not in (3, 4):
                    raise ValueError(
                        f"line {lineno}: P takes target, angle and optional c:<list>"
                    )
                controls: frozenset[int] = frozenset()
                if len(tokens) == 4:
                    if not tokens[3].startswith("c:"):
                        raise ValueError(f"line {lineno}: malformed control list {tokens[3]!r}")
                    items = [s for s in tokens[3][2:].split(",") if s]
                    if not items:
                        raise ValueError(f"line {lineno}: empty control list")
                    parsed = [_parse_qubit(s, n, lineno) for s in items]
                    controls = frozenset(parsed)
                    if len(controls) != len(parsed):
                        raise ValueError(f"line {lineno}: repeated control qubit")
                gates.append(
                    Gate(
                        kind,
                        target=_parse_qubit(tokens[1], n, lineno),
                        angle=_parse_angle(tokens[2], lineno),
                        controls=controls,
                    )
                )
            elif kind is GateKind.SWAP:
                if len(tokens) != 3:
                    raise ValueError(f"line {lineno}: SWAP takes two targets")
                gates.append(
                    Gate(
                        kind,
                        target=_parse_qubit(tokens[1], n, lineno),
                        target2=_parse_qubit(tokens[2], n, lineno),
                    )
                )
            else:
                if len(tokens) != 1:
                    raise ValueError(f"line {lineno}: ORACLE takes no arguments")
                gates.append(Gate(GateKind.ORACLE))
        except ValueError as exc:
            if str(exc).startswith("line "):
                raise
            raise ValueError(f"line {lineno}: {exc}") from None
    return tuple(gates)
