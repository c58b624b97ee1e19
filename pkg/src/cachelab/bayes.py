"""Discrete Bayesian networks: joint probability, inference by enumeration and by
variable elimination, Markov blankets, and CPT learning by counting.

Variable values are integer indices 0..cardinality-1. Binary variables follow the
T-first convention used throughout this package: index 0 renders as "T", index 1
as "F".
"""

import itertools
import json
from dataclasses import dataclass

import numpy as np

ROW_SUM_TOL = 1e-9


class BayesError(ValueError):
    pass


class UnknownVariable(BayesError):
    pass


class IncompleteAssignment(BayesError):
    pass


class InvalidQuery(BayesError):
    pass


class InvalidOrder(BayesError):
    pass


class ZeroEvidence(BayesError):
    pass


class EmptyData(BayesError):
    pass


class InvalidNet(BayesError):
    pass


@dataclass(frozen=True)
class Variable:
    name: str
    cardinality: int

    def __post_init__(self):
        if self.cardinality < 2:
            raise InvalidNet(f"variable {self.name!r}: cardinality must be >= 2")


@dataclass
class CPT:
    child: str
    parents: list
    rows: list  # one distribution over the child per parent assignment, lexicographic

    def validate(self, cards):
        expected_rows = 1
        for p in self.parents:
            expected_rows *= cards[p]
        if len(self.rows) != expected_rows:
            raise InvalidNet(
                f"cpt {self.child!r}: expected {expected_rows} rows, got {len(self.rows)}")
        for i, row in enumerate(self.rows):
            if len(row) != cards[self.child]:
                raise InvalidNet(
                    f"cpt {self.child!r} row {i}: expected {cards[self.child]} values")
            if any(v < 0 for v in row):
                raise InvalidNet(f"cpt {self.child!r} row {i}: negative probability")
            if abs(sum(row) - 1.0) > ROW_SUM_TOL:
                raise InvalidNet(f"cpt {self.child!r} row {i}: sums to {sum(row)!r}, not 1")


class Factor:
    """Nonnegative dense table over an ordered variable scope.

    values has one axis per scope variable, so the C-order flattening enumerates
    assignments lexicographically.
    """

    def __init__(self, scope, values):
        self.scope = list(scope)
        self.values = np.asarray(values, dtype=float)
        shape = tuple(v.cardinality for v in self.scope)
        if self.values.shape != shape:
            self.values = self.values.reshape(shape)

    def names(self):
        return [v.name for v in self.scope]

    def __mul__(self, other):
        scope = self.scope + [v for v in other.scope if v.name not in self.names()]
        return Factor(scope, _aligned(self, scope) * _aligned(other, scope))

    def sum_out(self, name):
        axis = self.names().index(name)
        scope = [v for v in self.scope if v.name != name]
        return Factor(scope, self.values.sum(axis=axis))

    def restrict(self, name, value):
        if name not in self.names():
            return self
        axis = self.names().index(name)
        scope = [v for v in self.scope if v.name != name]
        return Factor(scope, np.take(self.values, value, axis=axis))


def _aligned(factor, scope):
    """View of factor.values broadcastable over the union scope's axes."""
    names = factor.names()
    shape = tuple(v.cardinality if v.name in names else 1 for v in scope)
    order = [names.index(v.name) for v in scope if v.name in names]
    return factor.values.transpose(order).reshape(shape)


class BayesNet:
    def __init__(self, variables, cpts):
        self.variables = {}
        for v in variables:
            if v.name in self.variables:
                raise InvalidNet(f"duplicate variable {v.name!r}")
            self.variables[v.name] = v
        cards = {name: v.cardinality for name, v in self.variables.items()}
        self.cpts = {}
        for cpt in cpts:
            if cpt.child not in self.variables:
                raise InvalidNet(f"cpt for unknown variable {cpt.child!r}")
            if cpt.child in self.cpts:
                raise InvalidNet(f"duplicate cpt for {cpt.child!r}")
            for p in cpt.parents:
                if p not in self.variables:
                    raise InvalidNet(f"cpt {cpt.child!r}: unknown parent {p!r}")
            cpt.validate(cards)
            self.cpts[cpt.child] = cpt
        missing = set(self.variables) - set(self.cpts)
        if missing:
            raise InvalidNet(f"variables without a cpt: {sorted(missing)}")
        self._check_acyclic()

    def _check_acyclic(self):
        indeg = {name: len(self.cpts[name].parents) for name in self.variables}
        children = {name: [] for name in self.variables}
        for name, cpt in self.cpts.items():
            for p in cpt.parents:
                children[p].append(name)
        ready = [name for name, d in indeg.items() if d == 0]
        seen = 0
        while ready:
            name = ready.pop()
            seen += 1
            for c in children[name]:
                indeg[c] -= 1
                if indeg[c] == 0:
                    ready.append(c)
        if seen != len(self.variables):
            raise InvalidNet("the parent graph has a cycle")

    def parents(self, name):
        self._require(name)
        return list(self.cpts[name].parents)

    def children(self, name):
        self._require(name)
        return [c for c, cpt in self.cpts.items() if name in cpt.parents]

    def factor(self, name) -> Factor:
        """The CPT as a factor with scope parents + [child]."""
        cpt = self.cpts[name]
        scope = [self.variables[p] for p in cpt.parents] + [self.variables[name]]
        return Factor(scope, np.asarray(cpt.rows, dtype=float))

    def _require(self, name):
        if name not in self.variables:
            raise UnknownVariable(f"unknown variable {name!r}")

    def _check_values(self, assignment):
        for name, value in assignment.items():
            self._require(name)
            card = self.variables[name].cardinality
            if not 0 <= value < card:
                raise BayesError(f"{name!r}: value {value} outside 0..{card - 1}")


def joint_probability(net: BayesNet, assignment: dict) -> float:
    """Product over variables of P(child = assigned | parents = assigned)."""
    net._check_values(assignment)
    missing = set(net.variables) - set(assignment)
    if missing:
        raise IncompleteAssignment(f"unassigned variables: {sorted(missing)}")
    prob = 1.0
    for name, cpt in net.cpts.items():
        row = 0
        for p in cpt.parents:
            row = row * net.variables[p].cardinality + assignment[p]
        prob *= cpt.rows[row][assignment[name]]
    return prob


def _check_query(net, query_var, evidence):
    net._require(query_var)
    net._check_values(evidence)
    if query_var in evidence:
        raise InvalidQuery(f"query variable {query_var!r} appears in the evidence")


def infer_enumeration(net: BayesNet, query_var: str, evidence: dict) -> np.ndarray:
    """Sum the joint over all completions consistent with the evidence; normalize."""
    _check_query(net, query_var, evidence)
    hidden = [n for n in net.variables if n != query_var and n not in evidence]
    card = net.variables[query_var].cardinality
    totals = np.zeros(card)
    for value in range(card):
        assignment = dict(evidence)
        assignment[query_var] = value
        acc = 0.0
        for combo in itertools.product(*(range(net.variables[h].cardinality) for h in hidden)):
            assignment.update(zip(hidden, combo))
            acc += joint_probability(net, assignment)
        totals[value] = acc
    denom = totals.sum()
    if denom <= 0.0:
        raise ZeroEvidence("evidence has probability zero")
    return totals / denom


def eliminate_variable(factors, var: str):
    """Multiply every factor mentioning var, sum var out, pass the rest through."""
    touched = [f for f in factors if var in f.names()]
    if not touched:
        raise UnknownVariable(f"{var!r} appears in no factor")
    rest = [f for f in factors if var not in f.names()]
    product = touched[0]
    for f in touched[1:]:
        product = product * f
    rest.append(product.sum_out(var))
    return rest


def _default_order(factors, eliminable):
    """Greedy smallest-resulting-scope order, ties broken by variable name."""
    order = []
    scopes = [set(f.names()) for f in factors]
    remaining = set(eliminable)
    while remaining:
        best = None
        for var in sorted(remaining):
            joined = set()
            for s in scopes:
                if var in s:
                    joined |= s
            size = len(joined - {var})
            if best is None or size < best[0]:
                best = (size, var)
        _, var = best
        joined = set()
        untouched = []
        for s in scopes:
            if var in s:
                joined |= s
            else:
                untouched.append(s)
        untouched.append(joined - {var})
        scopes = untouched
        remaining.discard(var)
        order.append(var)
    return order


def infer_variable_elimination(net: BayesNet, query_var: str, evidence: dict,
                               order=None) -> np.ndarray:
    """Evidence-restricted factors, eliminate, multiply, normalize. Matches
    infer_enumeration within 1e-9 for any valid elimination order."""
    _check_query(net, query_var, evidence)
    factors = []
    for name in net.variables:
        f = net.factor(name)
        for ev_name, ev_value in evidence.items():
            f = f.restrict(ev_name, ev_value)
        factors.append(f)
    eliminable = [n for n in net.variables if n != query_var and n not in evidence]
    if order is None:
        order = _default_order(factors, eliminable)
    elif sorted(order) != sorted(eliminable):
        raise InvalidOrder(
            f"order must cover exactly {sorted(eliminable)}, got {sorted(order)}")
    for var in order:
        factors = eliminate_variable(factors, var)
    result = Factor([net.variables[query_var]], np.ones(net.variables[query_var].cardinality))
    for f in factors:
        result = result * f
    values = result.values.reshape(-1)
    denom = values.sum()
    if denom <= 0.0:
        raise ZeroEvidence("evidence has probability zero")
    return values / denom


def markov_blanket(net: BayesNet, var: str) -> set:
    """Parents, children, and the children's other parents."""
    net._require(var)
    blanket = set(net.parents(var))
    for child in net.children(var):
        blanket.add(child)
        blanket.update(net.parents(child))
    blanket.discard(var)
    return blanket


def learn_cpts(variables, structure: dict, data, pseudocount: float = 0.0) -> BayesNet:
    """Count-based CPT estimation over complete assignments:
    P(v | u) = (count(v, u) + a) / (count(u) + a * cardinality(child))."""
    if pseudocount < 0:
        raise BayesError(f"pseudocount must be >= 0, got {pseudocount}")
    variables = list(variables)
    cards = {v.name: v.cardinality for v in variables}
    data = list(data)
    if not data and pseudocount == 0:
        raise EmptyData("no data and no pseudocount: rows are undefined")
    names = set(cards)
    for i, row in enumerate(data):
        if set(row) != names:
            raise IncompleteAssignment(f"data row {i} does not assign every variable")
    cpts = []
    for v in variables:
        parents = list(structure.get(v.name, []))
        joint = {}
        context = {}
        for row in data:
            u = tuple(row[p] for p in parents)
            joint[(u, row[v.name])] = joint.get((u, row[v.name]), 0) + 1
            context[u] = context.get(u, 0) + 1
        rows = []
        for u in itertools.product(*(range(cards[p]) for p in parents)):
            denom = context.get(u, 0) + pseudocount * cards[v.name]
            if denom == 0:
                rows.append([1.0 / cards[v.name]] * cards[v.name])
            else:
                rows.append([(joint.get((u, val), 0) + pseudocount) / denom
                             for val in range(cards[v.name])])
        cpts.append(CPT(v.name, parents, rows))
    return BayesNet(variables, cpts)


def parse_net(text: str) -> BayesNet:
    """JSON net: {"variables": [{"name", "cardinality"}],
    "cpts": [{"child", "parents", "rows"}]} with rows in lexicographic parent order."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidNet(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise InvalidNet("top level must be an object")
    variables = []
    for i, entry in enumerate(doc.get("variables", [])):
        try:
            variables.append(Variable(str(entry["name"]), int(entry["cardinality"])))
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidNet(f"variables[{i}]: {exc}") from None
    cpts = []
    for i, entry in enumerate(doc.get("cpts", [])):
        try:
            rows = [[float(x) for x in row] for row in entry["rows"]]
            cpts.append(CPT(str(entry["child"]), [str(p) for p in entry["parents"]], rows))
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidNet(f"cpts[{i}]: {exc}") from None
    return BayesNet(variables, cpts)


def load_net(path) -> BayesNet:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_net(fh.read())


def value_label(variable: Variable, value: int) -> str:
    if variable.cardinality == 2:
        return "T" if value == 0 else "F"
    return str(value)


def parse_value(variable: Variable, token: str) -> int:
    if variable.cardinality == 2:
        if token == "T":
            return 0
        if token == "F":
            return 1
    try:
        value = int(token, 10)
    except ValueError:
        raise BayesError(f"{variable.name!r}: bad value {token!r}") from None
    if not 0 <= value < variable.cardinality:
        raise BayesError(f"{variable.name!r}: value {value} outside 0..{variable.cardinality - 1}")
    return value
