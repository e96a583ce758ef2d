import pytest

from deflog import (
    Atom,
    Derivation,
    DerivationLine,
    Literal,
    Mode,
    PreconditionError,
    Tag,
    TaggedLiteral,
    conclusions,
    elim_sup,
    normal,
    parse,
    prove,
    replay,
)
from deflog.analysis import gen_theory
from deflog.core import inf_minus_atom, primed_atom


def lit(name: str, positive: bool = True, args: tuple = ()) -> Literal:
    return Literal(Atom(name, args), positive)


P = lit("p")
NOT_P = lit("p", False)


class TestConclusions:
    def test_example1_team_defeat(self, example1_ground):
        c = conclusions(example1_ground)
        mammal = lit("mammal", args=("platypus",))
        assert c.has(Tag.PLUS_PARTIAL, mammal)
        assert c.has(Tag.MINUS_PARTIAL, mammal.complement())
        assert not c.has(Tag.PLUS_DELTA, mammal)

    def test_strict_loop_proves_nothing_about_p(self):
        c = conclusions(parse("r: p -> p."))
        assert not any(c.has(tag, P) for tag in Tag)

    def test_empty_theory_refutes_everything(self):
        c = conclusions(parse(""), extra_atoms=["p"])
        for q in (P, NOT_P):
            assert c.has(Tag.MINUS_DELTA, q)
            assert c.has(Tag.MINUS_PARTIAL, q)
        assert not c.plus_delta and not c.plus_partial

    def test_defeasible_with_strict_loop(self):
        c = conclusions(parse("r1: => p. r2: p -> p."))
        assert c.has(Tag.PLUS_PARTIAL, P)
        assert not c.has(Tag.PLUS_DELTA, P)
        assert not c.has(Tag.MINUS_DELTA, P)

    def test_elim_sup_example3_output(self, example3):
        out, _ = elim_sup(example3)
        c = conclusions(out)
        f = lit("f")
        assert c.has(Tag.MINUS_PARTIAL, f)
        assert c.has(Tag.MINUS_PARTIAL, f.complement())
        assert c.has(Tag.PLUS_PARTIAL, Literal(inf_minus_atom("r6"), False))

    def test_defeater_blocks_but_never_supports(self):
        c = conclusions(parse("d: ~> p. r: => ~p."))
        assert c.has(Tag.MINUS_PARTIAL, NOT_P)
        assert not c.has(Tag.PLUS_PARTIAL, P)

    def test_requires_ground_theory(self):
        with pytest.raises(PreconditionError, match="ground"):
            conclusions(parse("r: p(X) => q(X)."))

    def test_superiority_between_non_complementary_heads_is_inert(self):
        with_pair = conclusions(parse("r1: => p. r2: => q. r1 > r2."))
        without = conclusions(parse("r1: => p. r2: => q."))
        assert with_pair == without


class TestReducedMode:
    def test_rejects_facts(self):
        with pytest.raises(PreconditionError, match="reduced mode precondition"):
            conclusions(parse("p."), Mode.REDUCED)

    def test_rejects_defeaters(self):
        with pytest.raises(PreconditionError, match="reduced mode precondition"):
            conclusions(parse("d: ~> p."), Mode.REDUCED)

    def test_rejects_superiority(self):
        with pytest.raises(PreconditionError, match="reduced mode precondition"):
            conclusions(parse("r1: => p. r2: => ~p. r1 > r2."), Mode.REDUCED)

    def test_agrees_with_full_mode(self):
        for seed in range(40):
            t = gen_theory(seed, num_atoms=5, num_rules=8, strict_fraction=0.3)
            assert conclusions(t, Mode.FULL) == conclusions(t, Mode.REDUCED)


class TestInvariants:
    def test_structural_relations_hold_on_varied_theories(self):
        for seed in range(60):
            t = gen_theory(seed, num_atoms=6, num_rules=10, num_facts=2,
                           defeater_fraction=0.2, strict_fraction=0.3,
                           sup_density=0.1)
            conclusions(t).validate()  # raises on violation

    def test_strict_conclusions_are_defeasible(self):
        for seed in range(30):
            t = gen_theory(seed, num_atoms=5, num_rules=8, num_facts=2,
                           strict_fraction=0.5)
            c = conclusions(t)
            assert c.plus_delta <= c.plus_partial

    def test_derived_count_bounded(self, example3):
        c = conclusions(example3)
        literal_count = 2 * len(example3.atoms)
        total = (len(c.plus_delta) + len(c.minus_delta)
                 + len(c.plus_partial) + len(c.minus_partial))
        assert total <= 4 * literal_count


class TestProve:
    def test_one_line_definite_proof(self):
        d = prove(parse("r: -> p."), TaggedLiteral(Tag.PLUS_DELTA, P))
        assert d is not None
        assert len(d.lines) == 1
        assert d.conclusion == TaggedLiteral(Tag.PLUS_DELTA, P)
        assert d.lines[0].rules == ("r",)

    def test_strict_loop_refutation_unprovable(self):
        assert prove(parse("r: p -> p."), TaggedLiteral(Tag.MINUS_DELTA, P)) is None

    def test_overridden_complement_unprovable(self, example1_ground):
        goal = TaggedLiteral(Tag.PLUS_PARTIAL, lit("mammal", False, ("platypus",)))
        assert prove(example1_ground, goal) is None

    def test_unknown_atom(self, example1_ground):
        with pytest.raises(PreconditionError, match="unknown atom"):
            prove(example1_ground, TaggedLiteral(Tag.PLUS_DELTA, lit("unicorn")))

    def test_agrees_with_conclusions(self, example3):
        c = conclusions(example3)
        for atom in example3.atoms:
            for q in (Literal(atom), Literal(atom, False)):
                for tag in Tag:
                    goal = TaggedLiteral(tag, q)
                    assert (prove(example3, goal) is not None) == c.has(tag, q)

    def test_proofs_replay(self, example3):
        c = conclusions(example3)
        for atom in example3.atoms:
            for tag in Tag:
                goal = TaggedLiteral(tag, Literal(atom))
                d = prove(example3, goal)
                if d is not None:
                    assert replay(example3, d)
                    assert d.conclusion == goal


class TestReplay:
    def test_rejects_unsupported_refutation(self):
        bogus = Derivation((
            DerivationLine(TaggedLiteral(Tag.MINUS_DELTA, P), "claim", (), ()),
        ))
        assert not replay(parse("r: -> p."), bogus)

    def test_rejects_wrong_order(self):
        t = parse("r1: -> a. r2: a -> b.")
        a, b = lit("a"), lit("b")
        good = Derivation((
            DerivationLine(TaggedLiteral(Tag.PLUS_DELTA, a), "strict rule fires", ("r1",), ()),
            DerivationLine(TaggedLiteral(Tag.PLUS_DELTA, b), "strict rule fires", ("r2",),
                           (TaggedLiteral(Tag.PLUS_DELTA, a),)),
        ))
        assert replay(t, good)
        assert not replay(t, Derivation(tuple(reversed(good.lines))))

    def test_hand_built_bridge_derivation(self, example2):
        n, _ = normal(example2)
        e = lit("e")
        primed_e = Literal(primed_atom(Atom("e")))
        two_line = Derivation((
            DerivationLine(TaggedLiteral(Tag.PLUS_DELTA, primed_e),
                           "strict rule fires", ("$f(e)",), ()),
            DerivationLine(TaggedLiteral(Tag.PLUS_DELTA, e),
                           "strict rule fires", ("$b(e)",),
                           (TaggedLiteral(Tag.PLUS_DELTA, primed_e),)),
        ))
        assert replay(n, two_line)
