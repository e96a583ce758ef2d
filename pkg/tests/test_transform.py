import pytest

from deflog import (
    Atom,
    Literal,
    RuleKind,
    Tag,
    TheoryError,
    Theory,
    TransformError,
    check_normal,
    check_well_formed,
    conclusions,
    elim_dft,
    elim_sup,
    equivalent,
    normal,
    parse,
    pipeline,
    theory_union,
)
from deflog.analysis import gen_theory

from conftest import load


def generated_symbols(theory: Theory) -> set[str]:
    atoms = {str(a) for a in theory.atoms if a.generated}
    labels = {r.label for r in theory.rules if r.generated}
    return atoms | labels


class TestNormal:
    def test_example2_matches_golden(self, example2):
        out, report = normal(example2)
        golden = load("example2.normal.dfl", allow_generated=True)
        assert out == golden
        assert out.superiority == {("r4", "r3")}
        assert report.input_size == 7 and report.output_size == 13

    def test_example2_equivalent(self, example2):
        out, _ = normal(example2)
        assert equivalent(example2, out, example2.sigma.atoms)

    def test_empty_theory(self):
        out, report = normal(Theory())
        assert out == Theory()
        assert report.growth_factor == 1

    def test_single_strict_rule(self):
        out, _ = normal(parse("r: -> p."))
        assert out == parse("r$p: -> $p(p). r: => p. $b(p): $p(p) -> p.",
                            allow_generated=True)

    def test_rejects_generated_input(self, example2):
        once, _ = normal(example2)
        with pytest.raises(TransformError, match="already transformed"):
            normal(once)

    def test_output_is_normalized(self):
        for seed in range(30):
            t = gen_theory(seed, num_atoms=5, num_rules=8, num_facts=3,
                           defeater_fraction=0.2, strict_fraction=0.4, sup_density=0.1)
            assert check_normal(normal(t)[0]).ok

    def test_origin_map_covers_generated_symbols(self, example2):
        out, report = normal(example2)
        assert generated_symbols(out) <= set(report.origins)


class TestElimDft:
    def test_example3_matches_golden(self, example3):
        out, _ = elim_dft(example3)
        golden = load("example3.elim_dft.dfl", allow_generated=True)
        assert out == golden
        assert len(out.rules) == 16
        assert out.superiority == {
            ("r5", "r4"), ("r5$+", "r4$+"), ("r5$-", "r4$-"), ("r6", "r5$-"),
        }

    def test_example3_equivalent(self, example3):
        out, _ = elim_dft(example3)
        assert equivalent(example3, out, example3.sigma.atoms)

    def test_plain_defeasible_rule(self):
        out, _ = elim_dft(parse("r: => p."))
        assert out == parse("r$+: => $pl(p). r$-: => ~$mi(p). r: $pl(p) => p.",
                            allow_generated=True)

    def test_defeater_becomes_single_blocker(self):
        out, _ = elim_dft(parse("r: a ~> p."))
        assert out == parse("r: a => ~$mi(p).", allow_generated=True)

    def test_no_defeaters_in_output(self):
        for seed in range(30):
            t = gen_theory(seed, num_atoms=5, num_rules=8, defeater_fraction=0.5)
            out, _ = elim_dft(t)
            assert not any(r.kind == RuleKind.DEFEATER for r in out.rules)

    def test_facts_pass_through(self):
        out, _ = elim_dft(parse("p. r: => q."))
        assert out.facts == (Literal(Atom("p")),)

    def test_rejects_its_own_output(self, example3):
        once, _ = elim_dft(example3)
        with pytest.raises(TransformError, match="already transformed"):
            elim_dft(once)

    def test_accepts_normal_output(self, example2):
        # pipeline composition: a normalized theory still goes through
        out, _ = elim_dft(normal(example2)[0])
        assert check_normal(out).ok

    def test_derived_pairs_have_complementary_heads(self):
        for seed in range(30):
            t = gen_theory(seed, num_atoms=5, num_rules=8, num_facts=1,
                           defeater_fraction=0.3, strict_fraction=0.2, sup_density=0.25)
            out, _ = elim_dft(t)
            assert check_well_formed(out).complementary or not check_well_formed(t).complementary

    def test_origin_map_covers_generated_symbols(self, example3):
        out, report = elim_dft(example3)
        assert generated_symbols(out) <= set(report.origins)


class TestElimSup:
    def test_example3_matches_golden(self, example3):
        out, _ = elim_sup(example3)
        golden = load("example3.elim_sup.dfl", allow_generated=True)
        assert out == golden
        assert out.superiority == frozenset()

    def test_single_rule_no_superiority(self):
        out, _ = elim_sup(parse("r: => p."))
        assert out == parse(
            "r$a+: => ~$ip(r). r$b+: ~$ip(r) => p. r$a-: => ~$im(r). r$b-: ~$im(r) => p.",
            allow_generated=True,
        )

    def test_rejects_facts(self):
        with pytest.raises(TransformError, match="elim_sup requires normal form"):
            elim_sup(parse("p. r: => q."))

    def test_rejects_cyclic_superiority(self):
        t = parse("r1: => p. r2: => ~p. r1 > r2. r2 > r1.")
        with pytest.raises(TransformError, match="elim_sup requires acyclic superiority"):
            elim_sup(t)

    def test_rejects_strict_rule_in_superiority(self):
        t = parse("r1: -> p. r2: => ~p. r1 > r2.")
        with pytest.raises(TransformError, match="normal form"):
            elim_sup(t)

    def test_defeaters_stay_defeaters_at_the_head(self, example3):
        out, _ = elim_sup(example3)
        defeaters = [r for r in out.rules if r.kind == RuleKind.DEFEATER]
        assert [r.label for r in defeaters] == ["r6$b-"]

    def test_origin_map_covers_generated_symbols(self, example3):
        out, report = elim_sup(example3)
        assert generated_symbols(out) <= set(report.origins)

    def test_modular_on_distinct_normalized_pairs(self):
        # Rewriting one half of a union of label-disjoint, well-formed,
        # normalized theories leaves the union's conclusions unchanged.
        for seed in range(40):
            d1 = gen_theory(seed, num_atoms=4, num_rules=5, strict_fraction=0.3,
                            defeater_fraction=0.2, sup_density=0.25,
                            force_well_formed=True, force_normalized=True,
                            label_prefix="r")
            d2 = gen_theory(seed + 50_000, num_atoms=4, num_rules=5,
                            strict_fraction=0.3, defeater_fraction=0.2,
                            sup_density=0.25, force_well_formed=True,
                            force_normalized=True, label_prefix="s")
            union = theory_union(d1, d2)
            modular = theory_union(d1, elim_sup(d2)[0])
            sigma = {str(a) for a in union.atoms}
            assert equivalent(union, modular, sigma), f"seed {seed}"


class TestPipeline:
    def test_example3(self, example3):
        out, _ = pipeline(example3)
        assert not out.facts
        assert not out.superiority
        assert not any(r.kind == RuleKind.DEFEATER for r in out.rules)
        assert equivalent(example3, out, example3.sigma.atoms)

    def test_empty_theory(self):
        out, _ = pipeline(Theory())
        assert out == Theory()

    def test_single_defeasible_rule(self):
        src = parse("r: => p.")
        out, _ = pipeline(src)
        c = conclusions(out)
        p = Literal(Atom("p"))
        assert c.has(Tag.PLUS_PARTIAL, p)
        assert c.has(Tag.MINUS_DELTA, p)

    def test_rejects_cyclic_input(self):
        with pytest.raises(TransformError, match="well-formed"):
            pipeline(parse("r1: => p. r2: => ~p. r1 > r2. r2 > r1."))

    def test_output_passes_normal_check(self, example3):
        out, _ = pipeline(example3)
        report = check_normal(out)
        assert report.ok

    def test_merged_origins_cover_generated_symbols(self, example3):
        out, report = pipeline(example3)
        assert generated_symbols(out) <= set(report.origins)
        assert not any(v == "carried over from input" for v in report.origins.values())


class TestNonModularityRegressions:
    def test_normalization_is_not_modular(self):
        d1 = parse("r1: a -> b.")
        d2 = parse("r2: -> a.")
        b = Literal(Atom("b"))
        together = conclusions(theory_union(d1, d2))
        piecewise = conclusions(theory_union(normal(d1)[0], d2))
        assert together.has(Tag.PLUS_DELTA, b)
        assert piecewise.has(Tag.MINUS_DELTA, b)

    def test_defeater_elimination_is_not_modular(self):
        d1 = parse("d1: ~> p.")
        d2 = parse("d2: => ~p.")
        not_p = Literal(Atom("p"), False)
        together = conclusions(theory_union(d1, d2))
        piecewise = conclusions(theory_union(elim_dft(d1)[0], d2))
        assert together.has(Tag.MINUS_PARTIAL, not_p)
        assert piecewise.has(Tag.PLUS_PARTIAL, not_p)

    def test_superiority_only_fragment_is_refused(self):
        # The split that would defeat any modular superiority elimination:
        # the bare-priority fragment is not a constructible theory at all.
        full = parse("r1: => p. r2: => ~p. r1 > r2.")
        assert conclusions(full).has(Tag.PLUS_PARTIAL, Literal(Atom("p")))
        with pytest.raises(TheoryError, match="unknown label"):
            Theory((), (), frozenset({("r1", "r2")}))


class TestSizeAccounting:
    def test_growth_factors_on_examples(self, example2, example3):
        assert normal(example2)[1].growth_factor <= 3
        assert elim_dft(example3)[1].growth_factor <= 3
        assert elim_sup(example3)[1].growth_factor <= 4

    def test_minimal_superiority_case_stays_within_bound(self):
        t = parse("r1: => p. r2: => ~p. r1 > r2.")
        _, report = elim_sup(t)
        assert report.input_size == 3 and report.output_size == 10
        assert report.growth_factor <= 4
