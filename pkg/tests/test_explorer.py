"""Tests for the seeded generators, the open-question searches and re-verification."""

import json

import pytest

from src.cli.scene import SceneFile, scene_to_dict
from src.explorer.generators import (
    derive_seed,
    gen_affine_map,
    gen_common_axis_family,
    gen_common_center_family,
    gen_line,
    gen_pairwise_perspective_family,
    gen_perspective_pair,
    gen_point,
    gen_projmap,
    gen_triangle,
    trial_rng,
    with_retries,
)
from src.explorer.search import (
    COUNTEREXAMPLE,
    NOT_APPLICABLE,
    OP1_QUESTION,
    SUPPORTING,
    Counterexample,
    open_problem_1_search,
    open_problem_2_search,
    shared_mode_verdict,
    shared_point_verdict,
)
from src.explorer.verify import reverify_counterexample, verify_report, verify_report_file
from src.geometry.constructions import trihomological_triplet
from src.geometry.errors import ExhaustedRetries, InputError, ZeroVector
from src.geometry.kernel import ProjPoint
from src.geometry.perspectivity import Mode, perspector

IDENTITY = Mode.P.correspondence


class TestSeeds:
    """Test per-trial seed derivation."""

    def test_deterministic(self):
        """Test that a (seed, trial) pair always gives the same stream."""
        assert derive_seed(42, 7) == derive_seed(42, 7)
        assert trial_rng(42, 7).random() == trial_rng(42, 7).random()

    def test_trials_differ(self):
        """Test that trials and master seeds are separated."""
        assert derive_seed(42, 0) != derive_seed(42, 1)
        assert derive_seed(42, 0) != derive_seed(43, 0)

    def test_sixty_four_bits(self):
        """Test the seed range."""
        assert 0 <= derive_seed(1, 1) < 2**64


class TestGenerators:
    """Test random configuration generators."""

    def test_same_seed_same_triangle(self):
        """Test generator determinism."""
        assert gen_triangle(trial_rng(1, 0)) == gen_triangle(trial_rng(1, 0))

    def test_bound_respected(self):
        """Test that coordinates stay within the bound."""
        rng = trial_rng(2, 0)
        for _ in range(50):
            point = gen_point(rng, bound=3, affine=True)
            x, y = point.affine()
            assert abs(x) <= 3 and abs(y) <= 3

    def test_bound_too_small(self):
        """Test that bounds below 2 are rejected."""
        with pytest.raises(ValueError):
            gen_point(trial_rng(0, 0), bound=1)

    def test_maps_invertible(self):
        """Test that generated maps are invertible and affine maps affine."""
        rng = trial_rng(4, 0)
        assert gen_projmap(rng).determinant != 0
        assert gen_affine_map(rng).is_affine
        assert any(gen_line(rng).coeffs)

    def test_with_retries_exhausts(self):
        """Test the retry budget."""
        calls = []

        def always_degenerate():
            calls.append(1)
            raise ZeroVector("no")

        with pytest.raises(ExhaustedRetries):
            with_retries(always_degenerate, "nothing", budget=5)
        assert len(calls) == 5

    def test_perspective_pair_center(self):
        """Test that a prescribed center is the perspector."""
        center = ProjPoint.of(2, -3)
        t1, t2 = gen_perspective_pair(trial_rng(6, 0), bound=20, center=center)
        assert perspector(t1, t2, IDENTITY) == center

    def test_common_center_family(self):
        """Test that all three pairs share the prescribed center."""
        center = ProjPoint.of(1, 1)
        t1, t2, t3 = gen_common_center_family(trial_rng(6, 1), bound=20, center=center)
        for first, second in ((t1, t2), (t2, t3), (t3, t1)):
            assert perspector(first, second, IDENTITY) == center

    def test_common_axis_family(self):
        """Test three distinct centers for a common-axis family."""
        t1, t2, t3 = gen_common_axis_family(trial_rng(6, 2), bound=20)
        centers = {perspector(a, b, IDENTITY) for a, b in ((t1, t2), (t2, t3), (t3, t1))}
        assert len(centers) == 3

    def test_pairwise_family_centers(self):
        """Test prescribed pairwise centers (o12, o13, o23)."""
        o12, o13, o23 = ProjPoint.of(1, 0), ProjPoint.of(0, 1), ProjPoint.of(3, 3)
        t1, t2, t3 = gen_pairwise_perspective_family(
            trial_rng(6, 3), bound=20, centers=(o12, o13, o23)
        )
        assert perspector(t1, t2, IDENTITY) == o12
        assert perspector(t1, t3, IDENTITY) == o13
        assert perspector(t2, t3, IDENTITY) == o23


class TestVerdicts:
    """Test the two readings of shared centers."""

    P1, P2, P3, P4, P5 = (ProjPoint.of(i, i * i) for i in range(1, 6))

    def test_shared_points_supporting(self):
        """Test collinear remaining centers under the point reading."""
        a, b = ProjPoint.of(0, 5), ProjPoint.of(5, 0)
        remaining = [ProjPoint.of(1, 1), ProjPoint.of(2, 2), ProjPoint.of(3, 3)]
        centers = [{Mode.P: r, Mode.Q: a, Mode.R: b} for r in remaining]
        verdict, witness = shared_point_verdict(centers)
        assert verdict == SUPPORTING
        assert len(witness["common"]) == 2

    def test_shared_points_counterexample(self):
        """Test non-collinear remaining centers under the point reading."""
        centers = [
            {Mode.P: self.P1, Mode.Q: self.P4, Mode.R: self.P5},
            {Mode.P: self.P4, Mode.Q: self.P2, Mode.R: self.P5},
            {Mode.P: self.P5, Mode.Q: self.P4, Mode.R: self.P3},
        ]
        verdict, _ = shared_point_verdict(centers)
        assert verdict == COUNTEREXAMPLE

    def test_shared_modes_need_matching_modes(self):
        """Test that points shared under different modes do not count as shared modes."""
        centers = [
            {Mode.P: self.P1, Mode.Q: self.P4, Mode.R: self.P5},
            {Mode.P: self.P4, Mode.Q: self.P2, Mode.R: self.P5},
            {Mode.P: self.P5, Mode.Q: self.P4, Mode.R: self.P3},
        ]
        verdict, witness = shared_mode_verdict(centers)
        assert verdict == NOT_APPLICABLE
        assert witness["shared_modes"] == []

    def test_shared_modes_counterexample(self):
        """Test non-collinear remaining centers under the mode reading."""
        centers = [{Mode.P: p, Mode.Q: self.P4, Mode.R: self.P5} for p in (self.P1, self.P2, self.P3)]
        verdict, witness = shared_mode_verdict(centers)
        assert verdict == COUNTEREXAMPLE
        assert witness["remaining_mode"] == "P"


class TestOpenProblemSearches:
    """Test the randomized searches."""

    def test_op2_control_family_has_no_counterexample(self):
        """Test that the partner-construction family always supports the claim."""
        report = open_problem_2_search(trials=6, seed=3, bound=20, family="theorem8")
        assert report.trials_valid + report.degenerate + report.precondition_unmet == 6
        assert report.trials_valid > 0
        for tally in report.tallies.values():
            assert tally.counterexamples == 0
            assert tally.supporting == report.trials_valid

    def test_op2_mode_assignment_counts(self):
        """Test bookkeeping for the mode-assignment family."""
        report = open_problem_2_search(trials=6, seed=3, bound=20, family="mode-assignment")
        assert report.trials_valid + report.degenerate + report.precondition_unmet == 6
        for tally in report.tallies.values():
            assert tally.supporting + tally.counterexamples + tally.not_applicable == report.trials_valid

    def test_op1_counterexamples_reverify(self):
        """Test that every recorded counterexample survives independent re-verification."""
        report = open_problem_1_search(trials=5, seed=8, bound=20)
        tally = report.tallies[OP1_QUESTION]
        assert tally.supporting + tally.counterexamples + tally.not_applicable == report.trials_valid
        summary = verify_report(report.to_dict())
        assert summary.all_confirmed
        assert summary.checked == len(report.counterexamples)

    def test_deterministic_across_runs(self):
        """Test that the same seed gives the same report."""
        first = open_problem_1_search(trials=4, seed=21, bound=20)
        second = open_problem_1_search(trials=4, seed=21, bound=20)
        assert first.to_dict(include_timing=False) == second.to_dict(include_timing=False)

    @pytest.mark.slow
    def test_worker_count_does_not_change_report(self):
        """Test that a process pool gives the same report as a single worker."""
        serial = open_problem_2_search(trials=6, seed=5, bound=20, workers=1)
        parallel = open_problem_2_search(trials=6, seed=5, bound=20, workers=2)
        assert serial.to_dict(include_timing=False) == parallel.to_dict(include_timing=False)

    def test_max_recorded_caps_list_not_tally(self):
        """Test that recording stops at max_recorded while tallies keep counting."""
        report = open_problem_1_search(trials=5, seed=8, bound=20, max_recorded=0)
        assert report.counterexamples == []
        tally = report.tallies[OP1_QUESTION]
        assert tally.supporting + tally.counterexamples + tally.not_applicable == report.trials_valid

    @pytest.mark.parametrize(
        "kwargs",
        [{"trials": 0}, {"bound": 1}, {"workers": 0}, {"family": "nope"}],
    )
    def test_invalid_arguments(self, kwargs):
        """Test argument validation."""
        arguments = {"trials": 2, "seed": 1, "bound": 20, **kwargs}
        with pytest.raises(ValueError):
            open_problem_2_search(**arguments)


class TestReverification:
    """Test the kernel-only re-check of stored counterexamples."""

    @pytest.fixture
    def supporting_scene(self, reference_triangle, construction_points):
        triplet = trihomological_triplet(reference_triangle, *construction_points)
        return scene_to_dict(
            SceneFile(triangles={"T1": reference_triangle, "T2": triplet.t1, "T3": triplet.t2})
        )

    def test_false_op1_counterexample_rejected(self, supporting_scene):
        """Test that a tri-homological (T1, T3) does not confirm."""
        record = Counterexample(trial=0, question=OP1_QUESTION, scene=supporting_scene, witness={})
        assert reverify_counterexample("op1", record) is False

    def test_false_op2_counterexample_rejected(self, supporting_scene):
        """Test that the control configuration does not confirm under either reading."""
        for question in ("points", "modes"):
            record = Counterexample(trial=0, question=question, scene=supporting_scene, witness={})
            assert reverify_counterexample("op2", record) is False

    def test_report_summary_lists_failures(self, supporting_scene):
        """Test that unconfirmed trials are listed."""
        data = {
            "problem": "op1",
            "counterexamples": [
                {"trial": 4, "question": OP1_QUESTION, "scene": supporting_scene, "witness": {}}
            ],
        }
        summary = verify_report(data)
        assert summary.checked == 1
        assert summary.failed_trials == [4]
        assert not summary.all_confirmed

    def test_unknown_problem(self, supporting_scene):
        """Test that an unknown problem name is an input error."""
        record = Counterexample(trial=0, question="x", scene=supporting_scene, witness={})
        with pytest.raises(InputError):
            reverify_counterexample("op3", record)

    def test_malformed_report(self):
        """Test that a report without counterexamples is rejected."""
        with pytest.raises(InputError):
            verify_report({"problem": "op1"})

    def test_report_file(self, tmp_path):
        """Test reading a report from disk, and the missing-file error."""
        path = tmp_path / "report.json"
        path.write_text(json.dumps({"problem": "op2", "counterexamples": []}), encoding="utf-8")
        assert verify_report_file(path).checked == 0
        with pytest.raises(InputError):
            verify_report_file(tmp_path / "missing.json")
