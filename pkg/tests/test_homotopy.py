import itertools
import random

import pytest

import globflow as gf
from globflow.errors import NotAMorphism, SearchBudgetExceeded

from gen import random_script, relabel_atoms, subdivide_script


@pytest.fixture
def fig_morphism(segment, two_step):
    return gf.is_morphism(
        {"0": "s", "1": "t"},
        {segment.make_path(["u"]): two_step.make_path(["v", "w"])},
        segment,
        two_step,
    )


@pytest.fixture
def fork_morphism(wedge, fork_after_step):
    return gf.is_morphism(
        {"a": "A", "b": "B", "c": "C"},
        {
            wedge.make_path(["u"]): fork_after_step.make_path(["x", "y"]),
            wedge.make_path(["v"]): fork_after_step.make_path(["x", "z"]),
        },
        wedge,
        fork_after_step,
    )


class TestIsMorphism:
    def test_identity(self, fork_after_step):
        f = gf.is_morphism(
            {s: s for s in fork_after_step.states},
            {p: p for p in fork_after_step.paths},
            fork_after_step,
            fork_after_step,
        )
        assert f.image_states() == fork_after_step.states

    def test_subdividing_map_is_valid(self, fig_morphism):
        assert fig_morphism.state_map == {"0": "s", "1": "t"}

    def test_dropped_second_half_fails_target_law(self, segment, two_step):
        with pytest.raises(NotAMorphism) as exc:
            gf.is_morphism(
                {"0": "s", "1": "t"},
                {segment.make_path(["u"]): two_step.make_path(["v"])},
                segment,
                two_step,
            )
        assert exc.value.equation == "target"

    def test_partial_path_map_fails_totality(self, wedge, fork_after_step):
        with pytest.raises(NotAMorphism) as exc:
            gf.is_morphism(
                {"a": "A", "b": "B", "c": "C"},
                {wedge.make_path(["u"]): fork_after_step.make_path(["x", "y"])},
                wedge,
                fork_after_step,
            )
        assert exc.value.equation == "path totality"

    def test_composition_law_checked(self, two_step):
        v, w = two_step.make_path(["v"]), two_step.make_path(["w"])
        vw = two_step.make_path(["v", "w"])
        broken = {v: v, w: w, vw: vw}
        flow2 = gf.validate(
            gf.presentation(
                ["s", "m", "t"],
                [("v", "s", "m"), ("w", "m", "t"), ("d", "s", "t")],
            )
        )
        broken = {
            v: flow2.make_path(["v"]),
            w: flow2.make_path(["w"]),
            vw: flow2.make_path(["d"]),
        }
        with pytest.raises(NotAMorphism) as exc:
            gf.is_morphism({"s": "s", "m": "m", "t": "t"}, broken, two_step, flow2)
        assert exc.value.equation == "composition"


class TestIsIsomorphic:
    def test_relabeled_globes(self):
        found = gf.is_isomorphic(gf.glob({"a", "b"}), gf.glob({"c", "d"}))
        assert found is not None
        assert found.state_map == {"0": "0", "1": "1"}

    def test_block_sizes_obstruct(self):
        left = gf.concat([{"a", "b"}, {"c", "d", "e"}])
        right = gf.concat([{"a", "b", "c"}, {"d", "e"}])
        assert gf.is_isomorphic(left, right) is None
        # cross-check: no state bijection matches the atom-count matrices
        counts_l = {("0", "1"): 2, ("1", "2"): 3}
        counts_r = {("0", "1"): 3, ("1", "2"): 2}
        for perm in itertools.permutations(["0", "1", "2"]):
            m = dict(zip(["0", "1", "2"], perm))
            assert any(
                counts_l.get((a, b), 0) != counts_r.get((m[a], m[b]), 0)
                for a in m
                for b in m
            )

    def test_state_count_obstructs(self, segment, two_step):
        assert gf.is_isomorphic(segment, two_step) is None

    def test_found_morphism_validates_and_inverts(self, chain4):
        rng = random.Random(7)
        rename = {a.id: f"r{a.id}" for a in chain4.atoms}
        other = relabel_atoms(chain4, rename)
        found = gf.is_isomorphic(chain4, other)
        assert found is not None
        gf.is_morphism(found.state_map, found.path_map, chain4, other)
        inverse_states = {v: k for k, v in found.state_map.items()}
        inverse_paths = {v: k for k, v in found.path_map.items()}
        assert len(inverse_paths) == len(found.path_map)
        gf.is_morphism(inverse_states, inverse_paths, other, chain4)

    def test_reflexive_and_symmetric_on_random_flows(self):
        for seed in range(8):
            flow = gf.build(random_script(random.Random(seed)))
            assert gf.is_isomorphic(flow, flow) is not None
            rename = {a.id: f"x{i}" for i, a in enumerate(flow.atoms)}
            rename.update(
                {alias: f"w{i}" for i, alias in enumerate(sorted(flow.identifications))}
            )
            other = relabel_atoms(flow, rename)
            assert gf.is_isomorphic(flow, other) is not None
            assert gf.is_isomorphic(other, flow) is not None


class TestCheckTHomotopy:
    def test_subdivided_segment_accepted(self, segment, two_step, fig_morphism):
        report = gf.check_T_homotopy(fig_morphism, segment, two_step)
        assert report.verdict
        assert report.condition1.passed
        assert report.condition2.passed
        assert report.condition3.passed

    def test_fork_fails_only_branching_condition(self, wedge, fork_after_step, fork_morphism):
        report = gf.check_T_homotopy(fork_morphism, wedge, fork_after_step)
        assert not report.verdict
        assert report.condition1.passed
        assert report.condition2.offenders == (("m", 2, 1),)
        assert report.condition3.passed

    def test_disjoint_component_fails_reachability(self, segment):
        target = gf.validate(
            gf.presentation(
                ["s", "t", "p", "q"], [("u2", "s", "t"), ("k", "p", "q")]
            )
        )
        f = gf.is_morphism(
            {"0": "s", "1": "t"},
            {segment.make_path(["u"]): target.make_path(["u2"])},
            segment,
            target,
        )
        report = gf.check_T_homotopy(f, segment, target)
        assert not report.verdict
        assert report.condition1.passed
        assert not report.condition3.passed
        assert "p" in report.condition3.offenders

    def test_first_condition_alone_does_not_suffice(self, segment, two_step):
        # u -> v onto {s, m} is an isomorphism onto the restriction, but the
        # leftover state t is a new final state: conditions 2 and 3 veto it
        f = gf.is_morphism(
            {"0": "s", "1": "m"},
            {segment.make_path(["u"]): two_step.make_path(["v"])},
            segment,
            two_step,
        )
        report = gf.check_T_homotopy(f, segment, two_step)
        assert report.condition1.passed
        assert report.condition2.offenders == (("t", 0, 1),)
        assert report.condition3.offenders == ("t",)
        assert not report.verdict

    def test_non_surjective_path_map_fails_condition1(self, segment, two_step):
        # mapping onto {s, t} but sending u to v misses v*w and leaves
        # the restriction: checked directly on an unvalidated morphism
        f = gf.FlowMorphism(
            {"0": "s", "1": "t"}, {segment.make_path(["u"]): two_step.make_path(["v"])}
        )
        report = gf.check_T_homotopy(f, segment, two_step)
        assert not report.condition1.passed

    def test_verdict_is_conjunction(self, wedge, fork_after_step, fork_morphism):
        report = gf.check_T_homotopy(fork_morphism, wedge, fork_after_step)
        assert report.verdict == (
            report.condition1.passed
            and report.condition2.passed
            and report.condition3.passed
        )


class TestFindTHomotopy:
    def test_segment_subdivides_into_two_step(self, segment, two_step):
        found = gf.find_T_homotopy(segment, two_step)
        assert found is not None
        morphism, report = found
        assert morphism.state_map == {"0": "s", "1": "t"}
        assert report.verdict

    def test_globe_pair_versus_fork(self, fork_after_step):
        assert gf.find_T_homotopy(gf.glob({"u", "v"}), fork_after_step) is None

    def test_identity_found(self, segment):
        found = gf.find_T_homotopy(segment, segment)
        assert found is not None
        assert found[0].state_map == {"0": "0", "1": "1"}

    def test_budget(self, segment):
        big = gf.validate(
            gf.presentation([f"s{i}" for i in range(13)], [])
        )
        with pytest.raises(SearchBudgetExceeded):
            gf.find_T_homotopy(segment, big)

    @pytest.mark.parametrize("seed", range(12))
    def test_subdivision_always_found(self, seed):
        rng = random.Random(seed)
        scr = random_script(rng)
        subdivided, _ = subdivide_script(scr, rng)
        source = gf.build(scr)
        target = gf.build(subdivided)
        found = gf.find_T_homotopy(source, target)
        assert found is not None
        morphism, report = found
        assert report.verdict
        gf.is_morphism(morphism.state_map, morphism.path_map, source, target)
        image_initial = {morphism.state_map[s] for s in gf.initial_states(source)}
        image_final = {morphism.state_map[s] for s in gf.final_states(source)}
        assert image_initial == gf.initial_states(target)
        assert image_final == gf.final_states(target)

    def test_endpoint_preservation_on_accepted(self, segment, two_step):
        morphism, _ = gf.find_T_homotopy(segment, two_step)
        image_initial = {morphism.state_map[s] for s in gf.initial_states(segment)}
        image_final = {morphism.state_map[s] for s in gf.final_states(segment)}
        assert image_initial == gf.initial_states(two_step)
        assert image_final == gf.final_states(two_step)


class TestInvariantSummary:
    def test_segment_matrix(self, segment):
        summary = gf.invariant_summary(segment)
        assert summary.matrix == ((0, 1), (0, 0))

    def test_two_step_path_count(self, two_step):
        assert gf.invariant_summary(two_step).path_count == 3

    def test_fork_branching_counts(self, fork_after_step):
        summary = gf.invariant_summary(fork_after_step)
        assert summary.per_state["m"].minus_classes == 2
        assert summary.per_state["m"].plus_classes == 1
        assert summary.initial == ("A",)
        assert summary.final == ("B", "C")
