"""Compile the perfect-domination integer program into a QUBO.

Each vertex i contributes a domination penalty shaped by the size of its
closed neighborhood N[i]:

  |N[i]| = 1, N[i] = {j}:   P1 * (x_j - 1)^2
  |N[i]| = 2, N[i] = {j,k}: P1 * (1 - x_j - x_k + x_j*x_k)
  |N[i]| >= 3:              P1 * (sum_{j in N[i]} x_j - S_i - 1)^2

where S_i is a binary-expanded slack covering exactly {0, .., |N[i]|-1}.
The perfect (exactly-one-dominator) condition adds a linear penalty

  P2 * (sum_{uv in E} [x_u(1-x_v) + x_v(1-x_u)] - |V| + sum_v x_v)

which is nonnegative whenever the selected set dominates the graph.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph


class PenaltyError(ValueError):
    """Invalid penalty coefficients (need p1 > 0 and 0 < p2 <= p1)."""


def slack_coefficients(m: int) -> list[int]:
    """Positive integer weights whose subset sums are exactly {0, 1, ..., m}.

    Binary expansion with a truncated top coefficient: [1, 2, 4, ...,
    2^(bl-2), m - (2^(bl-1) - 1)] where bl is the bit length of m.
    """
    if m < 1:
        raise ValueError(f"slack range bound must be >= 1, got {m}")
    bl = m.bit_length()
    coeffs = [1 << i for i in range(bl - 1)]
    coeffs.append(m - ((1 << (bl - 1)) - 1))
    return coeffs


@dataclass(frozen=True)
class SlackBlock:
    """Slack binaries for one vertex's domination constraint."""

    vertex: int
    first_qubit: int
    coefficients: tuple[int, ...]

    def qubits(self) -> range:
        return range(self.first_qubit, self.first_qubit + len(self.coefficients))


@dataclass(frozen=True)
class VariableRegistry:
    """Total order over binary variables: decision variables first (qubit v
    for vertex v), then slack blocks by ascending vertex, bits in ascending
    position within a block."""

    n_decision: int
    slack_blocks: tuple[SlackBlock, ...]

    @property
    def n_slack(self) -> int:
        return sum(len(b.coefficients) for b in self.slack_blocks)

    @property
    def n_qubits(self) -> int:
        return self.n_decision + self.n_slack

    def names(self) -> list[str]:
        out = [f"x{v}" for v in range(self.n_decision)]
        for block in self.slack_blocks:
            out.extend(f"s{block.vertex}_{k}" for k in range(len(block.coefficients)))
        return out


@dataclass(frozen=True)
class QuboModel:
    """offset + sum_i linear[i]*x_i + sum_{i<j} quadratic[(i,j)]*x_i*x_j.

    Quadratic keys always have i < j and zero coefficients are never stored,
    so consumers must not rely on key presence.
    """

    offset: float
    linear: dict[int, float]
    quadratic: dict[tuple[int, int], float]
    registry: VariableRegistry
    p1: float
    p2: float

    @property
    def n_qubits(self) -> int:
        return self.registry.n_qubits


def default_penalties(g: Graph) -> tuple[float, float]:
    """Mid-grid defaults: p1 = 1.2 * |V|, p2 = p1."""
    p1 = 1.2 * g.vertex_count
    return p1, p1


def build_pdp_qubo(g: Graph, p1: float | None = None, p2: float | None = None) -> QuboModel:
    """Compile the perfect-domination problem on g into a QuboModel."""
    if g.vertex_count < 1:
        raise ValueError("graph must have at least one vertex")
    if p1 is None and p2 is None:
        p1, p2 = default_penalties(g)
    elif p2 is None:
        p2 = p1
    if p1 is None or p1 <= 0:
        raise PenaltyError(f"p1 must be positive, got {p1}")
    if p2 <= 0:
        raise PenaltyError(f"p2 must be positive, got {p2}")
    if p2 > p1:
        raise PenaltyError(f"p2 must not exceed p1, got p2={p2} > p1={p1}")

    n = g.vertex_count
    blocks: list[SlackBlock] = []
    next_qubit = n
    for v in range(n):
        nbhd = g.closed_neighborhood(v)
        if len(nbhd) >= 3:
            coeffs = tuple(slack_coefficients(len(nbhd) - 1))
            blocks.append(SlackBlock(vertex=v, first_qubit=next_qubit, coefficients=coeffs))
            next_qubit += len(coeffs)
    registry = VariableRegistry(n_decision=n, slack_blocks=tuple(blocks))
    block_by_vertex = {b.vertex: b for b in blocks}

    offset = 0.0
    linear: dict[int, float] = {}
    quadratic: dict[tuple[int, int], float] = {}

    def add_linear(i: int, c: float) -> None:
        linear[i] = linear.get(i, 0.0) + c

    def add_quadratic(i: int, j: int, c: float) -> None:
        key = (i, j) if i < j else (j, i)
        quadratic[key] = quadratic.get(key, 0.0) + c

    def add_square(terms: list[tuple[int, float]], constant: float, scale: float) -> None:
        # scale * (sum_t c_t x_t + constant)^2, reduced with x^2 = x
        nonlocal offset
        offset += scale * constant * constant
        for t, (i, ci) in enumerate(terms):
            add_linear(i, scale * (ci * ci + 2.0 * constant * ci))
            for j, cj in terms[t + 1 :]:
                add_quadratic(i, j, scale * 2.0 * ci * cj)

    # objective: |D|
    for v in range(n):
        add_linear(v, 1.0)

    # domination penalties, one per vertex
    for v in range(n):
        nbhd = g.closed_neighborhood(v)
        if len(nbhd) == 1:
            (j,) = nbhd
            offset += p1
            add_linear(j, -p1)
        elif len(nbhd) == 2:
            j, k = nbhd
            offset += p1
            add_linear(j, -p1)
            add_linear(k, -p1)
            add_quadratic(j, k, p1)
        else:
            block = block_by_vertex[v]
            terms = [(j, 1.0) for j in nbhd]
            terms += [(q, -float(c)) for q, c in zip(block.qubits(), block.coefficients)]
            add_square(terms, -1.0, p1)

    # perfect condition: cut(D) - |V| + |D|
    offset += -p2 * n
    for u, v in g.edges:
        add_linear(u, p2)
        add_linear(v, p2)
        add_quadratic(u, v, -2.0 * p2)
    for v in range(n):
        add_linear(v, p2)

    linear = {i: c for i, c in sorted(linear.items()) if c != 0.0}
    quadratic = {k: c for k, c in sorted(quadratic.items()) if c != 0.0}
    return QuboModel(offset=offset, linear=linear, quadratic=quadratic, registry=registry, p1=p1, p2=p2)


def evaluate_qubo(model: QuboModel, assignment) -> float:
    """Evaluate the QUBO polynomial at a 0/1 assignment over all variables."""
    bits = list(assignment)
    if len(bits) != model.n_qubits:
        raise ValueError(f"assignment has {len(bits)} entries, model has {model.n_qubits} variables")
    for i, b in enumerate(bits):
        if b not in (0, 1):
            raise ValueError(f"assignment entry {i} is {b!r}, expected 0 or 1")
    value = model.offset
    for i, c in model.linear.items():
        if bits[i]:
            value += c
    for (i, j), c in model.quadratic.items():
        if bits[i] and bits[j]:
            value += c
    return value


def qubo_to_dict(model: QuboModel) -> dict:
    """Structured export consumed by the CLI `model` subcommand."""
    names = model.registry.names()
    return {
        "offset": model.offset,
        "linear": [[i, c] for i, c in model.linear.items()],
        "quadratic": [[i, j, c] for (i, j), c in model.quadratic.items()],
        "registry": [{"name": name, "qubit": q} for q, name in enumerate(names)],
    }
