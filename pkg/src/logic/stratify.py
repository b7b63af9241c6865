"""
Stratification checking.

A formula is turned into a graph of difference constraints: one node per typed
entity, one edge per atom (offset 1 for membership, 0 for equality) plus, in L*,
offset-0 edges from every pair term to the class variables inside it. The graph is
solved with a union-find structure that keeps each node's type relative to its
representative. When some edge is inconsistent, the witness is a shortest cycle
of nonzero offset sum in the whole graph.
"""

from collections import deque
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

import networkx as nx
from pydantic import BaseModel, ConfigDict, Field

from src.logic.syntax import (
    Dialect,
    Formula,
    NodeKind,
    Term,
    TermKind,
    check_dialect,
    dialect_of,
    print_formula,
    print_term,
)
from src.utils.exceptions import DialectError, FeasibilityError, NotStratifiedError
from src.utils.logging import get_logger

logger = get_logger(__name__)


class Edge(BaseModel):
    """type(target) - type(source) == offset"""

    model_config = ConfigDict(frozen=True)

    source: str
    target: str
    offset: int = Field(ge=0, le=1)
    origin: str = ""


class WitnessStep(BaseModel):
    """One edge of a witness cycle, traversed forward (+offset) or backward (-offset)."""

    model_config = ConfigDict(frozen=True)

    edge: Edge
    forward: bool = True

    @property
    def start(self) -> str:
        return self.edge.source if self.forward else self.edge.target

    @property
    def end(self) -> str:
        return self.edge.target if self.forward else self.edge.source

    @property
    def contribution(self) -> int:
        return self.edge.offset if self.forward else -self.edge.offset


class ConstraintGraph(BaseModel):
    """
    Difference constraints extracted from one formula.

    ``occurrences`` lists, for every term occurrence of the source formula in
    ``iter_terms`` order, the node that carries its type (None for binders that
    have no node of their own).
    """

    model_config = ConfigDict(frozen=True)

    dialect: Dialect
    nodes: Tuple[str, ...]
    edges: Tuple[Edge, ...]
    occurrences: Tuple[Optional[str], ...] = ()
    merge_set_vars: bool = False

    def to_networkx(self) -> nx.MultiDiGraph:
        graph = nx.MultiDiGraph()
        graph.add_nodes_from(self.nodes)
        for index, edge in enumerate(self.edges):
            graph.add_edge(edge.source, edge.target, key=index, offset=edge.offset)
        return graph

    def components(self) -> List[List[str]]:
        """Connected components, each in node order, ordered by first node."""
        position = {node: i for i, node in enumerate(self.nodes)}
        undirected = self.to_networkx().to_undirected(as_view=True)
        groups = [
            sorted(component, key=position.__getitem__)
            for component in nx.connected_components(undirected)
        ]
        return sorted(groups, key=lambda group: position[group[0]])


class TypeAssignment(BaseModel):
    """Integer types for the nodes of a constraint graph."""

    model_config = ConfigDict(frozen=True)

    types: Dict[str, int]
    normalized: bool = False

    def shifted(self, c: int) -> "TypeAssignment":
        return TypeAssignment(
            types={node: t + c for node, t in self.types.items()},
            normalized=self.normalized and c == 0,
        )

    def satisfies(self, graph: ConstraintGraph) -> bool:
        try:
            return all(
                self.types[e.target] - self.types[e.source] == e.offset
                for e in graph.edges
            )
        except KeyError:
            return False

    def covers(self, graph: ConstraintGraph) -> bool:
        return all(node in self.types for node in graph.nodes)


class StratifyVerdict(BaseModel):
    """Outcome of a stratification check."""

    model_config = ConfigDict(frozen=True)

    stratified: bool
    assignment: Optional[TypeAssignment] = None
    cycle: Optional[Tuple[WitnessStep, ...]] = None

    @property
    def cycle_sum(self) -> int:
        return sum(step.contribution for step in self.cycle or ())

    def to_dict(self) -> Dict[str, object]:
        if self.stratified:
            payload: Dict[str, object] = {"verdict": "stratified"}
            if self.assignment is not None:
                payload["assignment"] = dict(self.assignment.types)
            return payload
        payload = {"verdict": "unstratified"}
        if self.cycle is not None:
            payload["cycle"] = [
                {
                    "source": step.edge.source,
                    "target": step.edge.target,
                    "offset": step.edge.offset,
                    "forward": step.forward,
                    "origin": step.edge.origin,
                }
                for step in self.cycle
            ]
            payload["cycle_sum"] = self.cycle_sum
        return payload


# ---------------------------------------------------------------------------
# Constraint extraction
# ---------------------------------------------------------------------------


class _Resolver:
    """Assign graph nodes to the term occurrences of a formula."""

    def __init__(self, lstar: bool, merge_set_vars: bool):
        self.lstar = lstar
        self.merge_set_vars = merge_set_vars
        self.nodes: Dict[str, None] = {}
        self.counts: Dict[str, int] = {}
        self.free: Dict[str, str] = {}
        self.occurrences: List[Optional[str]] = []
        self.edges: List[Edge] = []

    def new_node(self, base: str) -> str:
        count = self.counts.get(base, 0)
        self.counts[base] = count + 1
        label = base if count == 0 else f"{base}.{count}"
        self.nodes[label] = None
        return label

    def merged(self, term: Term) -> bool:
        if not self.lstar or term.kind is TermKind.CLASS_VAR:
            return True
        return self.merge_set_vars

    def variable(self, term: Term, env: Dict[str, Optional[str]]) -> str:
        if not self.merged(term):
            return self.new_node(str(term.name))
        key = term.key
        if key in env and env[key] is not None:
            return env[key]  # type: ignore[return-value]
        if key not in self.free:
            self.free[key] = self.new_node(str(term.name))
        return self.free[key]

    def term(self, term: Term, env: Dict[str, Optional[str]]) -> str:
        if term.is_variable:
            label = self.variable(term, env)
            self.occurrences.append(label)
            return label
        if term.kind is TermKind.VBAR:
            label = self.new_node(print_term(term))
            self.occurrences.append(label)
            return label

        label = self.new_node(print_term(term))
        self.occurrences.append(label)
        for arg in term.args:
            self.term(arg, env)
        for variable in term.variables():
            if variable.kind is TermKind.CLASS_VAR:
                self.edges.append(
                    Edge(
                        source=label,
                        target=self._class_label(variable, env),
                        offset=0,
                        origin=f"{print_term(term)} contains {variable.name}",
                    )
                )
        return label

    def _class_label(self, variable: Term, env: Dict[str, Optional[str]]) -> str:
        # class variables are merged, so their label does not depend on the occurrence
        key = variable.key
        if key in env and env[key] is not None:
            return env[key]  # type: ignore[return-value]
        return self.free.get(key, "")

    def formula(self, ast: Formula, env: Dict[str, Optional[str]]) -> None:
        if ast.is_atom:
            left, right = (self.term(t, env) for t in ast.terms)
            offset = 1 if ast.kind is NodeKind.MEMBER else 0
            self.edges.append(
                Edge(source=left, target=right, offset=offset, origin=print_formula(ast))
            )
            return
        if ast.binder is not None:
            binder = ast.binder
            if self.merged(binder):
                label: Optional[str] = self.new_node(str(binder.name))
            else:
                label = None
            self.occurrences.append(label)
            env = {**env, binder.key: label}
        for child in ast.children:
            self.formula(child, env)


def extract_constraints(
    ast: Formula,
    dialect: Union[Dialect, str] = Dialect.PLAIN,
    *,
    merge_set_vars: bool = False,
) -> ConstraintGraph:
    """
    Build the constraint graph of a plain or L* formula.

    Raises:
        DialectError: For TST input, or if the formula is not well formed in ``dialect``
    """
    dialect = Dialect(dialect)
    if dialect is Dialect.TST:
        raise DialectError(
            "TST formulas are typed already; erase the types first",
            expected="plain or lstar",
            found=dialect.value,
        )
    check_dialect(ast, dialect)

    resolver = _Resolver(dialect is Dialect.LSTAR, merge_set_vars)
    resolver.formula(ast, {})
    graph = ConstraintGraph(
        dialect=dialect,
        nodes=tuple(resolver.nodes),
        edges=tuple(resolver.edges),
        occurrences=tuple(resolver.occurrences),
        merge_set_vars=merge_set_vars,
    )
    logger.debug(
        "Extracted constraints",
        extra={
            "extra_data": {
                "dialect": dialect.value,
                "nodes": len(graph.nodes),
                "edges": len(graph.edges),
            }
        },
    )
    return graph


# ---------------------------------------------------------------------------
# Solving
# ---------------------------------------------------------------------------


class _PotentialUnionFind:
    """Union-find where each node stores its type minus its root's type."""

    def __init__(self, nodes: Sequence[str]):
        self.parent = {node: node for node in nodes}
        self.potential = {node: 0 for node in nodes}

    def find(self, node: str) -> Tuple[str, int]:
        path = []
        while self.parent[node] != node:
            path.append(node)
            node = self.parent[node]
        root = node
        # compress, accumulating potentials from the root downwards
        total = 0
        for member in reversed(path):
            total += self.potential[member]
            self.potential[member] = total
            self.parent[member] = root
        return root, (self.potential[path[0]] if path else 0)

    def union(self, edge: Edge) -> bool:
        """Record an edge; False if it contradicts the edges recorded so far."""
        root_s, pot_s = self.find(edge.source)
        root_t, pot_t = self.find(edge.target)
        if root_s == root_t:
            return pot_t - pot_s == edge.offset
        self.parent[root_t] = root_s
        self.potential[root_t] = edge.offset + pot_s - pot_t
        return True


TreeStep = Tuple[str, str, int]


def _tree_path(parent: Dict[str, Tuple[str, int]], node: str) -> List[TreeStep]:
    """(parent, child, edge index) steps from the BFS root down to ``node``."""
    path: List[TreeStep] = []
    while node in parent:
        above, index = parent[node]
        path.append((above, node, index))
        node = above
    path.reverse()
    return path


def _shortest_witness(graph: ConstraintGraph) -> Tuple[WitnessStep, ...]:
    """
    The shortest cycle with nonzero offset sum.

    Every node is tried as a BFS root; each edge closing a nonzero cycle with the
    tree paths is trimmed at the lowest common ancestor. The shortest cycle of
    nonzero sum is found from any root lying on it. Ties go to the earliest
    root in first-occurrence order, then the earliest edge.
    """
    undirected = graph.to_networkx().to_undirected(as_view=True)
    edges = graph.edges
    best: Optional[Tuple[WitnessStep, ...]] = None

    for root in graph.nodes:
        potential = {root: 0}
        parent: Dict[str, Tuple[str, int]] = {}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v, keyed in undirected[u].items():
                if v in potential:
                    continue
                index = min(keyed)
                edge = edges[index]
                step = edge.offset if edge.source == u else -edge.offset
                potential[v] = potential[u] + step
                parent[v] = (u, index)
                queue.append(v)

        for index, edge in enumerate(edges):
            if edge.source not in potential:
                continue
            if potential[edge.source] + edge.offset - potential[edge.target] == 0:
                continue
            down = _tree_path(parent, edge.source)
            up = _tree_path(parent, edge.target)
            shared = 0
            while shared < min(len(down), len(up)) and down[shared] == up[shared]:
                shared += 1
            down, up = down[shared:], up[shared:]
            if best is not None and len(down) + len(up) + 1 >= len(best):
                continue
            steps = [
                WitnessStep(edge=edges[i], forward=edges[i].source == a)
                for a, _, i in down
            ]
            steps.append(WitnessStep(edge=edge, forward=True))
            steps.extend(
                WitnessStep(edge=edges[i], forward=edges[i].source == b)
                for _, b, i in reversed(up)
            )
            best = tuple(steps)
            if len(best) == 1:
                return best

    if best is None:
        raise ValueError("constraint graph has no cycle of nonzero sum")
    return best


def solve(graph: ConstraintGraph) -> StratifyVerdict:
    """Solve a constraint graph: a normalized assignment, or a shortest bad cycle."""
    uf = _PotentialUnionFind(graph.nodes)

    for edge in graph.edges:
        if not uf.union(edge):
            cycle = _shortest_witness(graph)
            verdict = StratifyVerdict(stratified=False, cycle=cycle)
            logger.debug(
                "Formula is not stratified",
                extra={"extra_data": {"cycle_length": len(cycle), "origin": edge.origin}},
            )
            return verdict

    relative: Dict[str, Tuple[str, int]] = {node: uf.find(node) for node in graph.nodes}
    lowest: Dict[str, int] = {}
    for root, potential in relative.values():
        lowest[root] = min(potential, lowest.get(root, potential))
    types = {
        node: potential - lowest[root] for node, (root, potential) in relative.items()
    }
    return StratifyVerdict(
        stratified=True, assignment=TypeAssignment(types=types, normalized=True)
    )


def check_stratified(
    ast: Formula,
    dialect: Union[Dialect, str] = Dialect.PLAIN,
    *,
    merge_set_vars: bool = False,
) -> StratifyVerdict:
    """Decide stratifiability of a plain or L* formula."""
    return solve(extract_constraints(ast, dialect, merge_set_vars=merge_set_vars))


def brute_force_oracle(
    ast: Formula,
    dialect: Union[Dialect, str] = Dialect.PLAIN,
    bound: Optional[int] = None,
    *,
    merge_set_vars: bool = False,
    max_assignments: int = 1_000_000,
) -> StratifyVerdict:
    """
    Decide stratifiability by depth-first search over types in 0..bound.

    Components of the graph are searched independently. The default bound is
    node-count - 1, which is complete. The verdict carries the first satisfying
    assignment found but never a witness cycle.

    Raises:
        FeasibilityError: If the enumeration would exceed ``max_assignments``
    """
    graph = extract_constraints(ast, dialect, merge_set_vars=merge_set_vars)
    if bound is None:
        bound = max(len(graph.nodes) - 1, 0)
    components = graph.components()
    requested = sum((bound + 1) ** len(component) for component in components)
    if requested > max_assignments:
        raise FeasibilityError(
            f"oracle would enumerate {requested} assignments",
            limit=max_assignments,
            requested=requested,
        )

    component_of = {node: i for i, component in enumerate(components) for node in component}
    edges_by_component: Dict[int, List[Edge]] = {}
    for edge in graph.edges:
        edges_by_component.setdefault(component_of[edge.source], []).append(edge)

    types: Dict[str, int] = {}
    for i, component in enumerate(components):
        found = _first_solution(component, edges_by_component.get(i, []), bound)
        if found is None:
            return StratifyVerdict(stratified=False)
        types.update(found)
    return StratifyVerdict(stratified=True, assignment=TypeAssignment(types=types))


def _first_solution(
    component: Sequence[str], edges: Sequence[Edge], bound: int
) -> Optional[Dict[str, int]]:
    """
    The lexicographically first assignment in 0..bound satisfying ``edges``.

    Nodes are tried in order; each edge is checked as soon as both of its ends
    have a value, which prunes the search without changing its answer.
    """
    position = {node: k for k, node in enumerate(component)}
    checks: List[List[Edge]] = [[] for _ in component]
    for edge in edges:
        checks[max(position[edge.source], position[edge.target])].append(edge)
    values: Dict[str, int] = {}

    def extend(k: int) -> bool:
        if k == len(component):
            return True
        node = component[k]
        for value in range(bound + 1):
            values[node] = value
            if all(values[e.target] - values[e.source] == e.offset for e in checks[k]):
                if extend(k + 1):
                    return True
        del values[node]
        return False

    return dict(values) if extend(0) else None


# ---------------------------------------------------------------------------
# Verification and the TST bridge
# ---------------------------------------------------------------------------


def _occurrence_types(
    graph: ConstraintGraph, assignment: TypeAssignment
) -> Iterator[Optional[int]]:
    for label in graph.occurrences:
        yield None if label is None else assignment.types.get(label)


def _lift(
    assignment: Union[TypeAssignment, StratifyVerdict], graph: ConstraintGraph
) -> TypeAssignment:
    if isinstance(assignment, StratifyVerdict):
        if not assignment.stratified or assignment.assignment is None:
            cycle = [step.edge.model_dump() for step in assignment.cycle or ()]
            raise NotStratifiedError(cycle=cycle or None)
        assignment = assignment.assignment
    missing = [node for node in graph.nodes if node not in assignment.types]
    if missing:
        raise NotStratifiedError(
            f"assignment does not cover {', '.join(missing)}",
            details={"missing": missing},
        )
    if not assignment.satisfies(graph):
        raise NotStratifiedError("assignment violates a constraint of the formula")
    return assignment


def type_of_occurrences(
    assignment: Union[TypeAssignment, StratifyVerdict], ast: Formula
) -> Formula:
    """
    Annotate a plain formula with types, producing a TST formula.

    Raises:
        DialectError: If the formula is not plain
        NotStratifiedError: If the assignment is missing or does not solve the formula
    """
    if dialect_of(ast) is not Dialect.PLAIN:
        raise DialectError(
            "only plain formulas can be typed into TST",
            expected=Dialect.PLAIN.value,
            found=dialect_of(ast).value,
        )
    graph = extract_constraints(ast, Dialect.PLAIN)
    solved = _lift(assignment, graph)
    lowest = min(solved.types.values(), default=0)
    if lowest < 0:
        solved = solved.shifted(-lowest)
    levels = _occurrence_types(graph, solved)

    def typed(term: Term) -> Term:
        return Term(TermKind.SET_VAR, name=term.name, level=next(levels))

    def rebuild(node: Formula) -> Formula:
        binder = typed(node.binder) if node.binder is not None else None
        terms = tuple(typed(term) for term in node.terms)
        children = tuple(rebuild(child) for child in node.children)
        return Formula(node.kind, children=children, terms=terms, binder=binder)

    return check_dialect(rebuild(ast), Dialect.TST)


def verify_assignment(
    ast: Formula,
    dialect: Union[Dialect, str],
    assignment: TypeAssignment,
    *,
    merge_set_vars: bool = False,
) -> List[str]:
    """
    Re-check an assignment against the typing clauses, straight from the formula.

    Every term occurrence needs a natural-number type; class variables (every
    variable, in plain formulas) keep one type across the occurrences bound by one
    binder; a pair term has the type of every class variable inside it; both sides
    of ``=`` share a type; the right side of ``in`` is one type higher.

    Returns:
        A list of violations, empty when the assignment is a valid stratification
    """
    dialect = Dialect(dialect)
    graph = extract_constraints(ast, dialect, merge_set_vars=merge_set_vars)
    occurrence_types = list(_occurrence_types(graph, assignment))
    position = iter(range(len(occurrence_types)))
    violations: List[str] = []
    groups: Dict[Tuple[str, object], List[int]] = {}

    def grouped(term: Term) -> bool:
        if dialect is Dialect.PLAIN or term.kind is TermKind.CLASS_VAR:
            return True
        return merge_set_vars and term.is_variable

    def visit_term(term: Term, env: Dict[str, int]) -> Tuple[int, List[Tuple[Term, int]]]:
        index = next(position)
        own_type = occurrence_types[index]
        if own_type is None or own_type < 0:
            violations.append(f"occurrence of {print_term(term)} has no natural-number type")
        inner: List[Tuple[Term, int]] = []
        if term.is_variable:
            if grouped(term):
                groups.setdefault((term.key, env.get(term.key, "free")), []).append(index)
            inner.append((term, index))
        for arg in term.args:
            _, nested = visit_term(arg, env)
            inner.extend(nested)
        if term.kind is TermKind.PAIR:
            for variable, var_index in inner:
                if (
                    variable.kind is TermKind.CLASS_VAR
                    and occurrence_types[var_index] != own_type
                ):
                    violations.append(
                        f"{print_term(term)} and its class variable {variable.name} "
                        "have different types"
                    )
        return index, inner

    def visit(node: Formula, env: Dict[str, int]) -> None:
        if node.binder is not None:
            index = next(position)
            if grouped(node.binder):
                groups.setdefault((node.binder.key, index), []).append(index)
            env = {**env, node.binder.key: index}
        if node.is_atom:
            (left, _), (right, _) = (visit_term(t, env) for t in node.terms)
            s, t = occurrence_types[left], occurrence_types[right]
            step = 1 if node.kind is NodeKind.MEMBER else 0
            if s is None or t is None or t - s != step:
                violations.append(f"atom '{print_formula(node)}' is not typed correctly")
        for child in node.children:
            visit(child, env)

    visit(ast, {})
    for (key, _), indices in groups.items():
        if len({occurrence_types[i] for i in indices}) > 1:
            violations.append(f"occurrences of {key} carry different types")
    return violations
