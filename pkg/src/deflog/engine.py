"""Fixpoint computation of definite and defeasible conclusions.

A conclusion is a tagged literal: `+D q` (definitely provable), `-D q`
(demonstrably not definitely provable), `+d q` (defeasibly provable) or
`-d q` (demonstrably not defeasibly provable).  Provability is defined by
derivations, finite sequences of tagged literals in which every line is
licensed by an inference condition evaluated against the earlier lines.
Because the conditions only ever test membership of earlier lines, the set
of derivable tagged literals equals the least fixpoint of the one-step
operator that adds every tagged literal whose condition is satisfied by the
current set, and concatenating derivations yields a derivation.  This module
computes that fixpoint; a literal is provable iff it lands in the fixpoint,
and non-membership is a decision, not a timeout.

Full mode implements the four inference conditions of the general logic,
including the superiority relation and the restriction that defeaters may
attack a conclusion but never support one and never counterattack.  Reduced
mode implements the simplified conditions that become sound once facts,
defeaters and superiority have been compiled away; it refuses input that
still contains any of the three.

The candidate universe contains both polarities of every atom occurring in
the theory (plus any explicitly supplied extras), so refutations of literals
whose polarity is never mentioned are still derived.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from .core import (
    Atom,
    Literal,
    PreconditionError,
    Rule,
    RuleKind,
    Tag,
    TaggedLiteral,
    Theory,
)


class Mode(Enum):
    FULL = "full"
    REDUCED = "reduced"


@dataclass(frozen=True)
class ConclusionSet:
    """The four conclusion sets of a theory.

    On every engine result the five structural relations hold:
    plus_delta is contained in plus_partial, minus_partial in minus_delta,
    and plus_delta/minus_delta, plus_partial/minus_partial and
    plus_delta/minus_partial are pairwise disjoint.
    """

    plus_delta: frozenset[Literal]
    minus_delta: frozenset[Literal]
    plus_partial: frozenset[Literal]
    minus_partial: frozenset[Literal]

    def has(self, tag: Tag, literal: Literal) -> bool:
        return literal in self._set(tag)

    def __contains__(self, tagged: TaggedLiteral) -> bool:
        return tagged.literal in self._set(tagged.tag)

    def _set(self, tag: Tag) -> frozenset[Literal]:
        return {
            Tag.PLUS_DELTA: self.plus_delta,
            Tag.MINUS_DELTA: self.minus_delta,
            Tag.PLUS_PARTIAL: self.plus_partial,
            Tag.MINUS_PARTIAL: self.minus_partial,
        }[tag]

    def validate(self) -> None:
        """Check the five structural relations; raise AssertionError if broken."""
        assert self.plus_delta <= self.plus_partial, "+D must imply +d"
        assert self.minus_partial <= self.minus_delta, "-d must imply -D"
        assert not self.plus_delta & self.minus_delta, "+D and -D must be disjoint"
        assert not self.plus_partial & self.minus_partial, "+d and -d must be disjoint"
        assert not self.plus_delta & self.minus_partial, "+D and -d must be disjoint"

    def restrict(self, atoms: Iterable[Atom | str]) -> ConclusionSet:
        """Keep only literals over the given atoms."""
        keep = {str(a) for a in atoms}

        def flt(s: frozenset[Literal]) -> frozenset[Literal]:
            return frozenset(l for l in s if str(l.atom) in keep)

        return ConclusionSet(
            flt(self.plus_delta), flt(self.minus_delta),
            flt(self.plus_partial), flt(self.minus_partial),
        )

    def lines(self) -> list[str]:
        """The serialized listing: one `<tag> <literal>` per line, sorted."""
        out: list[str] = []
        for tag in (Tag.PLUS_DELTA, Tag.MINUS_DELTA, Tag.PLUS_PARTIAL, Tag.MINUS_PARTIAL):
            out.extend(f"{tag.value} {lit}" for lit in sorted(self._set(tag), key=str))
        return out


@dataclass(frozen=True)
class DerivationLine:
    """One derivation step: the conclusion, the condition branch that
    licensed it, the rules consulted, and the earlier lines it relies on."""

    conclusion: TaggedLiteral
    clause: str
    rules: tuple[str, ...]
    premises: tuple[TaggedLiteral, ...]


@dataclass(frozen=True)
class Derivation:
    lines: tuple[DerivationLine, ...]

    @property
    def conclusion(self) -> TaggedLiteral:
        return self.lines[-1].conclusion

    def __str__(self) -> str:
        return "\n".join(
            f"{i + 1}. {line.conclusion}  [{line.clause}"
            + (f"; rules {', '.join(line.rules)}" if line.rules else "")
            + "]"
            for i, line in enumerate(self.lines)
        )


@dataclass(frozen=True)
class _Support:
    clause: str
    rules: tuple[str, ...]
    premises: tuple[TaggedLiteral, ...]


def _sorted_literals(literals: Iterable[Literal]) -> list[Literal]:
    return sorted(literals, key=str)


class _Index:
    """Static lookup structures for one theory."""

    def __init__(self, theory: Theory, extra_atoms: Iterable[Atom | str] = ()):
        self.theory = theory
        self.facts = frozenset(theory.facts)
        atoms = set(theory.atoms)
        for extra in extra_atoms:
            atoms.add(Atom(extra) if isinstance(extra, str) else extra)
        self.atoms = frozenset(atoms)
        self.literals = [Literal(a, pos) for a in atoms for pos in (True, False)]

        self.strict: dict[Literal, list[Rule]] = {}
        self.supporters: dict[Literal, list[Rule]] = {}  # strict + defeasible
        self.all_rules: dict[Literal, list[Rule]] = {}
        for rule in theory.rules:
            self.all_rules.setdefault(rule.head, []).append(rule)
            if rule.kind == RuleKind.STRICT:
                self.strict.setdefault(rule.head, []).append(rule)
            if rule.kind != RuleKind.DEFEATER:
                self.supporters.setdefault(rule.head, []).append(rule)

        # For each rule s: the strict/defeasible rules for the complement of
        # its head that are declared superior to s.  These are the only rules
        # that can counterattack s; superiority between rules whose heads are
        # not complementary never enters the conditions.
        superiors: dict[str, set[str]] = {}
        for sup, inf in theory.superiority:
            superiors.setdefault(inf, set()).add(sup)
        self.counterattackers: dict[str, tuple[Rule, ...]] = {}
        for rule in theory.rules:
            subs = superiors.get(rule.label)
            if not subs:
                self.counterattackers[rule.label] = ()
                continue
            candidates = self.supporters.get(rule.head.complement(), [])
            self.counterattackers[rule.label] = tuple(
                t for t in candidates if t.label in subs
            )

    def strict_for(self, q: Literal) -> list[Rule]:
        return self.strict.get(q, [])

    def supporters_for(self, q: Literal) -> list[Rule]:
        return self.supporters.get(q, [])

    def attackers_of(self, q: Literal) -> list[Rule]:
        """Every rule for the complement of q, defeaters included."""
        return self.all_rules.get(q.complement(), [])


class _Solver:
    """Worklist fixpoint over the candidate tagged literals.

    Rule applicability is tracked incrementally: per rule, a countdown of
    antecedents not yet defeasibly proved, a blocked flag (some antecedent
    defeasibly refuted), plus the analogous pair at the definite level for
    strict rules.  Each candidate is re-examined only when a tagged literal
    it depends on is derived, which keeps the fixpoint near-linear in the
    dependency structure at this package's scale.
    """

    def __init__(self, index: _Index, mode: Mode):
        self.index = index
        self.mode = mode
        self.state: dict[Tag, set[Literal]] = {tag: set() for tag in Tag}
        self.derived: dict[TaggedLiteral, _Support] = {}

        rules = index.theory.rules
        self.fire = {r.label: len(r.antecedent) for r in rules}
        self.blocked: dict[str, bool] = {r.label: False for r in rules}
        self.delta_fire = {r.label: len(r.antecedent) for r in rules}
        self.delta_blocked: dict[str, bool] = {r.label: False for r in rules}

        self.ant_index: dict[Literal, list[Rule]] = {}
        self.ant_index_strict: dict[Literal, list[Rule]] = {}
        for r in rules:
            for a in r.antecedent:
                self.ant_index.setdefault(a, []).append(r)
                if r.kind == RuleKind.STRICT:
                    self.ant_index_strict.setdefault(a, []).append(r)

        self.affected = self._dependency_map()

    def _dependency_map(self) -> dict[TaggedLiteral, tuple[TaggedLiteral, ...]]:
        dep: dict[TaggedLiteral, set[TaggedLiteral]] = {}

        def add(trigger: TaggedLiteral, candidate: TaggedLiteral) -> None:
            dep.setdefault(trigger, set()).add(candidate)

        for q in self.index.literals:
            nq = q.complement()
            add(TaggedLiteral(Tag.PLUS_DELTA, q), TaggedLiteral(Tag.PLUS_PARTIAL, q))
            add(TaggedLiteral(Tag.PLUS_DELTA, q), TaggedLiteral(Tag.MINUS_PARTIAL, nq))
            add(TaggedLiteral(Tag.MINUS_DELTA, q), TaggedLiteral(Tag.MINUS_PARTIAL, q))
            add(TaggedLiteral(Tag.MINUS_DELTA, q), TaggedLiteral(Tag.PLUS_PARTIAL, nq))
        for r in self.index.theory.rules:
            h = r.head
            nh = h.complement()
            for a in r.antecedent:
                if r.kind == RuleKind.STRICT:
                    add(TaggedLiteral(Tag.PLUS_DELTA, a), TaggedLiteral(Tag.PLUS_DELTA, h))
                    add(TaggedLiteral(Tag.MINUS_DELTA, a), TaggedLiteral(Tag.MINUS_DELTA, h))
                if r.kind != RuleKind.DEFEATER:
                    add(TaggedLiteral(Tag.PLUS_PARTIAL, a), TaggedLiteral(Tag.PLUS_PARTIAL, h))
                    add(TaggedLiteral(Tag.MINUS_PARTIAL, a), TaggedLiteral(Tag.MINUS_PARTIAL, h))
                add(TaggedLiteral(Tag.MINUS_PARTIAL, a), TaggedLiteral(Tag.PLUS_PARTIAL, nh))
                add(TaggedLiteral(Tag.PLUS_PARTIAL, a), TaggedLiteral(Tag.MINUS_PARTIAL, nh))
        return {k: tuple(v) for k, v in dep.items()}

    def run(self) -> None:
        queue: deque[TaggedLiteral] = deque(
            TaggedLiteral(tag, lit)
            for lit in _sorted_literals(self.index.literals)
            for tag in (Tag.PLUS_DELTA, Tag.MINUS_DELTA, Tag.PLUS_PARTIAL, Tag.MINUS_PARTIAL)
        )
        while queue:
            cand = queue.popleft()
            if cand in self.derived:
                continue
            support = self._evaluate(cand)
            if support is None:
                continue
            self._add(cand, support)
            for nxt in self.affected.get(cand, ()):
                if nxt not in self.derived:
                    queue.append(nxt)

    def _add(self, tagged: TaggedLiteral, support: _Support) -> None:
        self.derived[tagged] = support
        self.state[tagged.tag].add(tagged.literal)
        lit = tagged.literal
        if tagged.tag == Tag.PLUS_PARTIAL:
            for r in self.ant_index.get(lit, ()):
                self.fire[r.label] -= 1
        elif tagged.tag == Tag.MINUS_PARTIAL:
            for r in self.ant_index.get(lit, ()):
                self.blocked[r.label] = True
        elif tagged.tag == Tag.PLUS_DELTA:
            for r in self.ant_index_strict.get(lit, ()):
                self.delta_fire[r.label] -= 1
        else:
            for r in self.ant_index_strict.get(lit, ()):
                self.delta_blocked[r.label] = True

    # -- condition evaluation -------------------------------------------

    def _evaluate(self, cand: TaggedLiteral) -> _Support | None:
        q = cand.literal
        if cand.tag == Tag.PLUS_DELTA:
            return self._plus_delta(q)
        if cand.tag == Tag.MINUS_DELTA:
            return self._minus_delta(q)
        if self.mode == Mode.FULL:
            if cand.tag == Tag.PLUS_PARTIAL:
                return self._plus_partial(q)
            return self._minus_partial(q)
        if cand.tag == Tag.PLUS_PARTIAL:
            return self._plus_partial_reduced(q)
        return self._minus_partial_reduced(q)

    def _plus_delta(self, q: Literal) -> _Support | None:
        if q in self.index.facts:
            return _Support("fact", (), ())
        for r in self.index.strict_for(q):
            if self.delta_fire[r.label] == 0:
                premises = tuple(
                    TaggedLiteral(Tag.PLUS_DELTA, a)
                    for a in _sorted_literals(r.antecedent)
                )
                return _Support("strict rule fires", (r.label,), premises)
        return None

    def _minus_delta(self, q: Literal) -> _Support | None:
        if q in self.index.facts:
            return None
        labels: list[str] = []
        premises: list[TaggedLiteral] = []
        for r in self.index.strict_for(q):
            if not self.delta_blocked[r.label]:
                return None
            labels.append(r.label)
            premises.append(self._delta_block_witness(r))
        return _Support("not a fact, every strict rule blocked",
                        tuple(labels), tuple(premises))

    def _delta_block_witness(self, r: Rule) -> TaggedLiteral:
        for a in _sorted_literals(r.antecedent):
            if a in self.state[Tag.MINUS_DELTA]:
                return TaggedLiteral(Tag.MINUS_DELTA, a)
        raise AssertionError(f"rule {r.label} marked blocked without witness")

    def _block_witness(self, r: Rule) -> TaggedLiteral:
        for a in _sorted_literals(r.antecedent):
            if a in self.state[Tag.MINUS_PARTIAL]:
                return TaggedLiteral(Tag.MINUS_PARTIAL, a)
        raise AssertionError(f"rule {r.label} marked blocked without witness")

    def _applicable_premises(self, r: Rule) -> tuple[TaggedLiteral, ...]:
        return tuple(
            TaggedLiteral(Tag.PLUS_PARTIAL, a) for a in _sorted_literals(r.antecedent)
        )

    def _plus_partial(self, q: Literal) -> _Support | None:
        if q in self.state[Tag.PLUS_DELTA]:
            return _Support("already definite", (), (TaggedLiteral(Tag.PLUS_DELTA, q),))
        supporter = next(
            (r for r in self.index.supporters_for(q) if self.fire[r.label] == 0), None
        )
        if supporter is None:
            return None
        nq = q.complement()
        if nq not in self.state[Tag.MINUS_DELTA]:
            return None
        labels = [supporter.label]
        premises = list(self._applicable_premises(supporter))
        premises.append(TaggedLiteral(Tag.MINUS_DELTA, nq))
        for s in self.index.attackers_of(q):
            if self.blocked[s.label]:
                labels.append(s.label)
                premises.append(self._block_witness(s))
                continue
            counter = next(
                (t for t in self.index.counterattackers[s.label] if self.fire[t.label] == 0),
                None,
            )
            if counter is None:
                return None
            labels.append(counter.label)
            premises.extend(self._applicable_premises(counter))
        return _Support("supported, complement not definite, every attack "
                        "blocked or counterattacked by a superior rule",
                        tuple(dict.fromkeys(labels)),
                        tuple(dict.fromkeys(premises)))

    def _minus_partial(self, q: Literal) -> _Support | None:
        if q not in self.state[Tag.MINUS_DELTA]:
            return None
        base = (TaggedLiteral(Tag.MINUS_DELTA, q),)
        supporters = self.index.supporters_for(q)
        if all(self.blocked[r.label] for r in supporters):
            premises = base + tuple(self._block_witness(r) for r in supporters)
            return _Support("every supporting rule blocked",
                            tuple(r.label for r in supporters),
                            tuple(dict.fromkeys(premises)))
        nq = q.complement()
        if nq in self.state[Tag.PLUS_DELTA]:
            return _Support("complement definitely provable", (),
                            base + (TaggedLiteral(Tag.PLUS_DELTA, nq),))
        for s in self.index.attackers_of(q):
            if self.fire[s.label] != 0:
                continue
            counters = self.index.counterattackers[s.label]
            if all(self.blocked[t.label] for t in counters):
                labels = [s.label] + [t.label for t in counters]
                premises = (base + self._applicable_premises(s)
                            + tuple(self._block_witness(t) for t in counters))
                return _Support("applicable attacker no superior rule overrides",
                                tuple(labels), tuple(dict.fromkeys(premises)))
        return None

    def _plus_partial_reduced(self, q: Literal) -> _Support | None:
        if q in self.state[Tag.PLUS_DELTA]:
            return _Support("already definite", (), (TaggedLiteral(Tag.PLUS_DELTA, q),))
        supporter = next(
            (r for r in self.index.all_rules.get(q, []) if self.fire[r.label] == 0), None
        )
        if supporter is None:
            return None
        nq = q.complement()
        if nq not in self.state[Tag.MINUS_DELTA]:
            return None
        attackers = self.index.attackers_of(q)
        if not all(self.blocked[s.label] for s in attackers):
            return None
        premises = (self._applicable_premises(supporter)
                    + (TaggedLiteral(Tag.MINUS_DELTA, nq),)
                    + tuple(self._block_witness(s) for s in attackers))
        return _Support("supported, complement not definite, every attack blocked",
                        tuple(dict.fromkeys([supporter.label] + [s.label for s in attackers])),
                        tuple(dict.fromkeys(premises)))

    def _minus_partial_reduced(self, q: Literal) -> _Support | None:
        if q not in self.state[Tag.MINUS_DELTA]:
            return None
        base = (TaggedLiteral(Tag.MINUS_DELTA, q),)
        rules = self.index.all_rules.get(q, [])
        if all(self.blocked[r.label] for r in rules):
            return _Support("every supporting rule blocked",
                            tuple(r.label for r in rules),
                            tuple(dict.fromkeys(base + tuple(self._block_witness(r) for r in rules))))
        nq = q.complement()
        if nq in self.state[Tag.PLUS_DELTA]:
            return _Support("complement definitely provable", (),
                            base + (TaggedLiteral(Tag.PLUS_DELTA, nq),))
        for s in self.index.attackers_of(q):
            if self.fire[s.label] == 0:
                return _Support("applicable attacker", (s.label,),
                                tuple(dict.fromkeys(base + self._applicable_premises(s))))
        return None


def _check_reduced_preconditions(theory: Theory) -> None:
    problems = []
    if theory.facts:
        problems.append("facts")
    if any(r.kind == RuleKind.DEFEATER for r in theory.rules):
        problems.append("defeaters")
    if theory.superiority:
        problems.append("a superiority relation")
    if problems:
        raise PreconditionError(
            "reduced mode precondition: theory still contains "
            + ", ".join(problems)
        )


def _solve(theory: Theory, mode: Mode, extra_atoms: Iterable[Atom | str]) -> _Solver:
    if not theory.is_ground:
        raise PreconditionError("theory is not ground; expand schemas first")
    if mode == Mode.REDUCED:
        _check_reduced_preconditions(theory)
    solver = _Solver(_Index(theory, extra_atoms), mode)
    solver.run()
    return solver


def conclusions(
    theory: Theory,
    mode: Mode = Mode.FULL,
    extra_atoms: Iterable[Atom | str] = (),
) -> ConclusionSet:
    """Compute all conclusions of a ground theory.

    `extra_atoms` widens the candidate universe with atoms that do not occur
    in the theory, so that their refutations (`-D`, `-d`) become derivable;
    the empty theory has no atoms of its own, for instance.

    Reduced mode raises :class:`PreconditionError` if the theory still has
    facts, defeaters or superiority pairs.  The structural relations between
    the four sets are verified on every result before it is returned.
    """
    solver = _solve(theory, mode, extra_atoms)
    result = ConclusionSet(
        frozenset(solver.state[Tag.PLUS_DELTA]),
        frozenset(solver.state[Tag.MINUS_DELTA]),
        frozenset(solver.state[Tag.PLUS_PARTIAL]),
        frozenset(solver.state[Tag.MINUS_PARTIAL]),
    )
    result.validate()
    return result


def prove(
    theory: Theory,
    goal: TaggedLiteral,
    mode: Mode = Mode.FULL,
) -> Derivation | None:
    """Produce a derivation ending in `goal`, or None if it is not provable.

    The returned derivation replays: every line's condition holds with
    respect to the strictly earlier lines only.
    """
    if goal.literal.atom not in theory.atoms:
        raise PreconditionError(f"unknown atom: {goal.literal.atom}")
    solver = _solve(theory, mode, ())
    if goal not in solver.derived:
        return None
    order = {tagged: i for i, tagged in enumerate(solver.derived)}
    needed: set[TaggedLiteral] = set()
    stack = [goal]
    while stack:
        current = stack.pop()
        if current in needed:
            continue
        needed.add(current)
        stack.extend(solver.derived[current].premises)
    lines = tuple(
        DerivationLine(tagged, solver.derived[tagged].clause,
                       solver.derived[tagged].rules,
                       solver.derived[tagged].premises)
        for tagged in sorted(needed, key=order.__getitem__)
    )
    return Derivation(lines)


def replay(theory: Theory, derivation: Derivation, mode: Mode = Mode.FULL) -> bool:
    """Check a derivation line by line.

    True iff every line's inference condition holds given only the lines
    before it.  The recorded clause and rule annotations are informative;
    validity is judged against the conditions themselves.
    """
    index = _Index(theory)
    have: set[TaggedLiteral] = set()
    for line in derivation.lines:
        if not _line_holds(index, line.conclusion, have, mode):
            return False
        have.add(line.conclusion)
    return True


def _line_holds(
    index: _Index, tagged: TaggedLiteral, have: set[TaggedLiteral], mode: Mode
) -> bool:
    q = tagged.literal
    nq = q.complement()

    def holds(tag: Tag, lit: Literal) -> bool:
        return TaggedLiteral(tag, lit) in have

    def applicable(r: Rule, tag: Tag) -> bool:
        return all(holds(tag, a) for a in r.antecedent)

    def discarded(r: Rule, tag: Tag) -> bool:
        return any(holds(tag, a) for a in r.antecedent)

    if tagged.tag == Tag.PLUS_DELTA:
        return q in index.facts or any(
            applicable(r, Tag.PLUS_DELTA) for r in index.strict_for(q)
        )
    if tagged.tag == Tag.MINUS_DELTA:
        return q not in index.facts and all(
            discarded(r, Tag.MINUS_DELTA) for r in index.strict_for(q)
        )

    sup = index.theory.superiority
    if tagged.tag == Tag.PLUS_PARTIAL:
        if holds(Tag.PLUS_DELTA, q):
            return True
        supporters = (index.supporters_for(q) if mode == Mode.FULL
                      else index.all_rules.get(q, []))
        if not any(applicable(r, Tag.PLUS_PARTIAL) for r in supporters):
            return False
        if not holds(Tag.MINUS_DELTA, nq):
            return False
        for s in index.attackers_of(q):
            if discarded(s, Tag.MINUS_PARTIAL):
                continue
            if mode == Mode.REDUCED:
                return False
            if not any(
                applicable(t, Tag.PLUS_PARTIAL) and (t.label, s.label) in sup
                for t in index.supporters_for(q)
            ):
                return False
        return True

    # minus partial
    if not holds(Tag.MINUS_DELTA, q):
        return False
    supporters = (index.supporters_for(q) if mode == Mode.FULL
                  else index.all_rules.get(q, []))
    if all(discarded(r, Tag.MINUS_PARTIAL) for r in supporters):
        return True
    if holds(Tag.PLUS_DELTA, nq):
        return True
    for s in index.attackers_of(q):
        if not applicable(s, Tag.PLUS_PARTIAL):
            continue
        if mode == Mode.REDUCED:
            return True
        if all(
            discarded(t, Tag.MINUS_PARTIAL) or (t.label, s.label) not in sup
            for t in index.supporters_for(q)
        ):
            return True
    return False
