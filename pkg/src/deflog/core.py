"""Domain types for propositional defeasible theories.

A theory is a triple of facts, labelled rules, and a superiority relation
between rule labels.  Rules come in three kinds: strict rules fire whenever
their antecedents are indisputable, defeasible rules support conclusions but
can be defeated by contrary evidence, and defeaters can only block
conclusions.  Everything in this module is immutable and hashable; theories
compare structurally, ignoring the storage order of facts and rules.

Atoms may carry arguments.  Uppercase-initial arguments are variables, which
makes the enclosing rule a schema; :func:`ground` expands schemas over the
constants occurring anywhere in the theory.

Symbols introduced by the transformation passes live in a reserved namespace
marked by ``$``, which the input grammar forbids in user identifiers, so
generated names can never collide with user names.  The spelling helpers at
the bottom of this module are the single source of truth for that namespace.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable, Iterator

GENERATED_MARKER = "$"


class DeflogError(Exception):
    """Base class for all errors raised by this package."""


class TheoryError(DeflogError):
    """A theory is structurally invalid (duplicate or dangling labels)."""


class GroundingError(DeflogError):
    """A schema cannot be instantiated."""


class PreconditionError(DeflogError):
    """An operation was applied to input that violates its contract."""


def _is_variable(name: str) -> bool:
    return name[:1].isupper()


@dataclass(frozen=True)
class Atom:
    """A named proposition, optionally applied to arguments.

    Arguments are flat identifiers: lowercase-initial ones are constants,
    uppercase-initial ones are variables.  There are no function symbols.
    """

    name: str
    args: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not self.name:
            raise TheoryError("atom name must be nonempty")
        object.__setattr__(self, "args", tuple(self.args))

    @property
    def generated(self) -> bool:
        """True for atoms minted by a transformation pass."""
        return GENERATED_MARKER in self.name

    @property
    def is_ground(self) -> bool:
        return not any(_is_variable(a) for a in self.args)

    def variables(self) -> frozenset[str]:
        return frozenset(a for a in self.args if _is_variable(a))

    def substitute(self, binding: dict[str, str]) -> Atom:
        if not self.args:
            return self
        return Atom(self.name, tuple(binding.get(a, a) for a in self.args))

    def __str__(self) -> str:
        if self.args:
            return f"{self.name}({','.join(self.args)})"
        return self.name


@dataclass(frozen=True)
class Literal:
    """A signed atom; the unit of facts, antecedents, heads and conclusions."""

    atom: Atom
    positive: bool = True

    def complement(self) -> Literal:
        return Literal(self.atom, not self.positive)

    @property
    def is_ground(self) -> bool:
        return self.atom.is_ground

    def variables(self) -> frozenset[str]:
        return self.atom.variables()

    def substitute(self, binding: dict[str, str]) -> Literal:
        return Literal(self.atom.substitute(binding), self.positive)

    def __str__(self) -> str:
        return str(self.atom) if self.positive else f"~{self.atom}"


def complement(literal: Literal) -> Literal:
    """The complementary literal: flips polarity, keeps the atom."""
    return literal.complement()


class RuleKind(Enum):
    """The three rule arrows."""

    STRICT = "->"
    DEFEASIBLE = "=>"
    DEFEATER = "~>"

    @property
    def arrow(self) -> str:
        return self.value


@dataclass(frozen=True)
class Rule:
    """A labelled rule: finite antecedent set, arrow kind, head literal."""

    label: str
    antecedent: frozenset[Literal]
    kind: RuleKind
    head: Literal

    def __post_init__(self) -> None:
        if not self.label:
            raise TheoryError("rule label must be nonempty")
        object.__setattr__(self, "antecedent", frozenset(self.antecedent))

    @property
    def generated(self) -> bool:
        return GENERATED_MARKER in self.label

    @property
    def is_ground(self) -> bool:
        return self.head.is_ground and all(a.is_ground for a in self.antecedent)

    def variables(self) -> frozenset[str]:
        out = set(self.head.variables())
        for a in self.antecedent:
            out |= a.variables()
        return frozenset(out)

    def substitute(self, binding: dict[str, str], label: str | None = None) -> Rule:
        return Rule(
            label if label is not None else self.label,
            frozenset(a.substitute(binding) for a in self.antecedent),
            self.kind,
            self.head.substitute(binding),
        )

    def __str__(self) -> str:
        ants = ", ".join(sorted(str(a) for a in self.antecedent))
        if ants:
            return f"{self.label}: {ants} {self.kind.arrow} {self.head}"
        return f"{self.label}: {self.kind.arrow} {self.head}"


@dataclass(frozen=True)
class Sigma:
    """The language of a theory: its user-visible atoms and rule labels."""

    atoms: frozenset[Atom]
    labels: frozenset[str]


@dataclass(frozen=True, eq=False)
class Theory:
    """A defeasible theory: facts, rules and a superiority relation.

    Facts and rules keep their source order for deterministic serialization,
    but equality is order-insensitive: two theories are equal when they hold
    the same facts, the same rules and the same superiority pairs.

    Construction validates that rule labels are unique and that every label
    mentioned in the superiority relation names a rule of the theory.
    Superiority pairs between rules whose heads are not complementary are
    accepted and stored; well-formedness is a separate, advisory check.
    """

    facts: tuple[Literal, ...] = ()
    rules: tuple[Rule, ...] = ()
    superiority: frozenset[tuple[str, str]] = frozenset()

    def __post_init__(self) -> None:
        facts = tuple(dict.fromkeys(self.facts))
        object.__setattr__(self, "facts", facts)
        object.__setattr__(self, "rules", tuple(self.rules))
        object.__setattr__(self, "superiority", frozenset(self.superiority))
        seen: set[str] = set()
        for rule in self.rules:
            if rule.label in seen:
                raise TheoryError(f"duplicate label {rule.label!r}")
            seen.add(rule.label)
        for sup, inf in self.superiority:
            for label in (sup, inf):
                if label not in seen:
                    raise TheoryError(f"unknown label {label!r} in superiority relation")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Theory):
            return NotImplemented
        return (
            frozenset(self.facts) == frozenset(other.facts)
            and frozenset(self.rules) == frozenset(other.rules)
            and self.superiority == other.superiority
        )

    def __hash__(self) -> int:
        return hash((frozenset(self.facts), frozenset(self.rules), self.superiority))

    @cached_property
    def rule_map(self) -> dict[str, Rule]:
        return {r.label: r for r in self.rules}

    @cached_property
    def atoms(self) -> frozenset[Atom]:
        """Every atom occurring in a fact, head or antecedent."""
        out: set[Atom] = {f.atom for f in self.facts}
        for r in self.rules:
            out.add(r.head.atom)
            out.update(a.atom for a in r.antecedent)
        return frozenset(out)

    @property
    def labels(self) -> frozenset[str]:
        return frozenset(self.rule_map)

    @cached_property
    def sigma(self) -> Sigma:
        """The user language: non-generated atoms and labels only."""
        return Sigma(
            frozenset(a for a in self.atoms if not a.generated),
            frozenset(l for l in self.labels if GENERATED_MARKER not in l),
        )

    @cached_property
    def is_ground(self) -> bool:
        return all(f.is_ground for f in self.facts) and all(r.is_ground for r in self.rules)

    @property
    def has_generated_symbols(self) -> bool:
        return any(a.generated for a in self.atoms) or any(r.generated for r in self.rules)

    def size(self) -> int:
        """Number of knowledge units: facts + rules + superiority pairs."""
        return len(self.facts) + len(self.rules) + len(self.superiority)

    def rules_by_kind(self, kind: RuleKind) -> tuple[Rule, ...]:
        return tuple(r for r in self.rules if r.kind == kind)


def rules_for(
    theory: Theory,
    head: Literal,
    kinds: Iterable[RuleKind] | None = None,
) -> tuple[Rule, ...]:
    """The rules of `theory` with the given head, filtered by kind.

    With `kinds=None` every kind is admitted.  Passing subsets realizes the
    usual rule-class selections: strict only, strict-or-defeasible, and so on.
    """
    wanted = set(RuleKind) if kinds is None else set(kinds)
    return tuple(r for r in theory.rules if r.head == head and r.kind in wanted)


@dataclass(frozen=True)
class WellFormedReport:
    """Advisory well-formedness flags for a theory's superiority relation."""

    acyclic: bool
    complementary: bool

    @property
    def ok(self) -> bool:
        return self.acyclic and self.complementary


def check_well_formed(theory: Theory) -> WellFormedReport:
    """Report whether the superiority relation is acyclic and only relates
    rules with complementary heads.

    Acyclicity means the transitive closure of the relation is irreflexive,
    i.e. the label graph has no directed cycle.
    """
    graph: dict[str, list[str]] = {}
    for sup, inf in theory.superiority:
        graph.setdefault(sup, []).append(inf)
    acyclic = not _has_cycle(graph)
    complementary = all(
        theory.rule_map[sup].head == theory.rule_map[inf].head.complement()
        for sup, inf in theory.superiority
    )
    return WellFormedReport(acyclic=acyclic, complementary=complementary)


def _has_cycle(graph: dict[str, list[str]]) -> bool:
    WHITE, GREY, BLACK = 0, 1, 2
    color = {node: WHITE for node in graph}
    for start in graph:
        if color[start] != WHITE:
            continue
        stack: list[tuple[str, Iterator[str]]] = [(start, iter(graph[start]))]
        color[start] = GREY
        while stack:
            node, edges = stack[-1]
            advanced = False
            for nxt in edges:
                if nxt not in graph:
                    continue  # no outgoing edges, cannot lie on a cycle
                if color[nxt] == GREY:
                    return True
                if color[nxt] == WHITE:
                    color[nxt] = GREY
                    stack.append((nxt, iter(graph[nxt])))
                    advanced = True
                    break
            if not advanced:
                color[node] = BLACK
                stack.pop()
    return False


@dataclass(frozen=True)
class NormalFormReport:
    """Flags for the normal-form conditions.

    `literal_rule_condition`: every literal is defined solely by strict
    rules, or by at most one strict rule plus non-strict rules.
    `no_strict_in_sup`: no strict rule participates in the superiority
    relation.  `no_facts`: the fact set is empty.
    """

    literal_rule_condition: bool
    no_strict_in_sup: bool
    no_facts: bool

    @property
    def ok(self) -> bool:
        return self.literal_rule_condition and self.no_strict_in_sup and self.no_facts


def check_normal(theory: Theory) -> NormalFormReport:
    strict_count: dict[Literal, int] = {}
    nonstrict_count: dict[Literal, int] = {}
    for r in theory.rules:
        bucket = strict_count if r.kind == RuleKind.STRICT else nonstrict_count
        bucket[r.head] = bucket.get(r.head, 0) + 1
    literal_ok = all(
        strict_count.get(head, 0) <= 1
        for head in nonstrict_count
    )
    strict_labels = {r.label for r in theory.rules if r.kind == RuleKind.STRICT}
    sup_ok = all(
        sup not in strict_labels and inf not in strict_labels
        for sup, inf in theory.superiority
    )
    return NormalFormReport(
        literal_rule_condition=literal_ok,
        no_strict_in_sup=sup_ok,
        no_facts=not theory.facts,
    )


def instance_label(label: str, values: tuple[str, ...]) -> str:
    """Label of a schema instance: the schema label plus a constant tuple."""
    return f"{label}[{','.join(values)}]"


def ground(theory: Theory) -> Theory:
    """Expand every rule schema over the constants of the theory.

    The Herbrand universe is the set of constants occurring anywhere in the
    theory.  Each schema rule yields one instance per assignment of constants
    to its variables; variable-free rules pass through unchanged.  A
    superiority pair between schemas induces pairs between instances that
    agree on the variables the two schemas share (variables are matched by
    name) and the full cross product on the remaining ones.
    """
    if theory.is_ground:
        return theory
    for f in theory.facts:
        if not f.is_ground:
            raise GroundingError(f"variables are not allowed in facts: {f}")
    constants = sorted(
        {arg for atom in theory.atoms for arg in atom.args if not _is_variable(arg)}
    )
    if not constants:
        raise GroundingError("empty Herbrand universe")

    # For each schema label: the instances, keyed by variable assignment.
    instances: dict[str, dict[tuple[tuple[str, str], ...], Rule]] = {}
    rules: list[Rule] = []
    for rule in theory.rules:
        variables = sorted(rule.variables())
        if not variables:
            instances[rule.label] = {(): rule}
            rules.append(rule)
            continue
        per_assignment: dict[tuple[tuple[str, str], ...], Rule] = {}
        for values in itertools.product(constants, repeat=len(variables)):
            binding = dict(zip(variables, values))
            inst = rule.substitute(binding, label=instance_label(rule.label, values))
            per_assignment[tuple(sorted(binding.items()))] = inst
            rules.append(inst)
        instances[rule.label] = per_assignment

    superiority: set[tuple[str, str]] = set()
    for sup, inf in theory.superiority:
        for asg1, inst1 in instances[sup].items():
            bound1 = dict(asg1)
            for asg2, inst2 in instances[inf].items():
                if all(bound1[v] == c for v, c in asg2 if v in bound1):
                    superiority.add((inst1.label, inst2.label))

    return Theory(theory.facts, tuple(rules), frozenset(superiority))


def theory_union(*theories: Theory) -> Theory:
    """Union of theories: facts, rules and superiority pairs combined.

    Identical rules (same label and same content) collapse; a label reused
    for a different rule is an error.
    """
    facts: dict[Literal, None] = {}
    rules: dict[str, Rule] = {}
    order: list[Rule] = []
    superiority: set[tuple[str, str]] = set()
    for t in theories:
        facts.update(dict.fromkeys(t.facts))
        for r in t.rules:
            prior = rules.get(r.label)
            if prior is None:
                rules[r.label] = r
                order.append(r)
            elif prior != r:
                raise TheoryError(f"conflicting definitions for label {r.label!r}")
        superiority |= t.superiority
    return Theory(tuple(facts), tuple(order), frozenset(superiority))


class Tag(Enum):
    """The four conclusion tags: definite/defeasible, provable/refuted."""

    PLUS_DELTA = "+D"
    MINUS_DELTA = "-D"
    PLUS_PARTIAL = "+d"
    MINUS_PARTIAL = "-d"


@dataclass(frozen=True)
class TaggedLiteral:
    """A literal annotated with one of the four conclusion tags."""

    tag: Tag
    literal: Literal

    def __str__(self) -> str:
        return f"{self.tag.value} {self.literal}"


# --- reserved generated-symbol spellings -----------------------------------
#
# These spellings are part of the tool's external contract: serialized
# transformed theories use them verbatim, and they are what golden files
# assert against.

def primed_atom(atom: Atom) -> Atom:
    return Atom(f"$p({atom})")


def primed_literal(literal: Literal) -> Literal:
    """Prime mapped through literals: the primed form of ~p is ~(p')."""
    return Literal(primed_atom(literal.atom), literal.positive)


def fact_rule_label(fact: Literal) -> str:
    return f"$f({fact})"


def bridge_label(literal: Literal) -> str:
    return f"$b({literal})"


def primed_label(label: str) -> str:
    return f"{label}$p"


def inf_plus_atom(label: str) -> Atom:
    return Atom(f"$ip({label})")


def inf_minus_atom(label: str) -> Atom:
    return Atom(f"$im({label})")


def sup_rule_label(sign: str, superior: str, inferior: str) -> str:
    return f"$s{sign}({superior},{inferior})"


def elim_sup_label(label: str, part: str) -> str:
    """Labels of the rules elim_sup derives from one source rule.

    `part` is one of a+, b+, a-, b-.
    """
    return f"{label}${part}"


def plus_atom(atom: Atom) -> Atom:
    return Atom(f"$pl({atom})")


def minus_atom(atom: Atom) -> Atom:
    return Atom(f"$mi({atom})")


def dft_label(label: str, sign: str) -> str:
    """Labels of the support/block rules elim_dft derives: r$+ and r$-."""
    return f"{label}${sign}"
