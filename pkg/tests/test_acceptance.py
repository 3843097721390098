"""Seeded large-sample checks of the identities, theorems and searches.

Deselect with -m "not slow".
"""

import json
import random
import re
from fractions import Fraction

import pytest

from src.app import main
from src.explorer.generators import (
    gen_common_axis_family,
    gen_common_center_family,
    gen_line,
    gen_pairwise_perspective_family,
    gen_perspective_pair,
    gen_point,
    gen_projmap,
    gen_triangle,
    trial_rng,
)
from src.explorer.verify import verify_report_file
from src.geometry.constructions import theorem8_triangles, trihomological_triplet, veronese
from src.geometry.errors import DegeneracyError
from src.geometry.kernel import ProjPoint, Triangle, apply_map, collinear, meet
from src.geometry.perspectivity import (
    Correspondence,
    Mode,
    homology_report,
    is_trihomological,
    perspective_axis,
    perspector,
    theorem1_check,
    theorem2_check,
    theorem3_check,
)
from src.geometry.ratios import bihomology_criterion, grand_product, menelaus_product, nine_intersections

pytestmark = pytest.mark.slow

IDENTITY = Mode.P.correspondence
ELAPSED = re.compile(r'\n\s*"elapsed_seconds": [^,\n]*,?')


def _point_on_side(rng: random.Random, start: ProjPoint, end: ProjPoint) -> ProjPoint:
    """A finite point of line(start, end) other than start and end."""
    s = Fraction(rng.choice([-3, -2, -1, 2, 3, 4]), rng.choice([2, 3, 5, 7]))
    (x0, y0), (x1, y1) = start.affine(), end.affine()
    return ProjPoint.of(x0 + s * (x1 - x0), y0 + s * (y1 - y0))


class TestIdentities:
    """Test the ratio identities on a thousand seeded configurations."""

    def test_grand_product(self):
        """Test the grand product on general-position pairs."""
        checked = 0
        for trial in range(1000):
            rng = trial_rng(100, trial)
            t1, t2 = gen_triangle(rng, 50, affine=True), gen_triangle(rng, 50, affine=True)
            try:
                n = nine_intersections(t1, t2)
            except DegeneracyError:
                continue
            assert grand_product(n, t1) == 1
            checked += 1
        assert checked >= 900

    def test_menelaus_both_directions(self):
        """Test product 1 for transversals and not 1 for non-collinear side points."""
        positive = negative = 0
        for trial in range(1000):
            rng = trial_rng(101, trial)
            t = gen_triangle(rng, 50, affine=True)
            line = gen_line(rng, 50)
            try:
                meets = [meet(line, t.side(i)) for i in range(3)]
                assert menelaus_product(t, *meets) == 1
                positive += 1
            except DegeneracyError:
                pass

            a, b, c = t.vertices
            points = (_point_on_side(rng, b, c), _point_on_side(rng, c, a), _point_on_side(rng, a, b))
            if not collinear(*points):
                assert menelaus_product(t, *points) != 1
                negative += 1
        assert positive >= 900
        assert negative >= 900

    def test_bihomology_criterion_matches_concurrence(self):
        """Test the criterion on random pairs and on constructed perspective pairs."""
        evaluated = 0
        for trial in range(1000):
            rng = trial_rng(102, trial)
            t1, t2 = gen_triangle(rng, 50, affine=True), gen_triangle(rng, 50, affine=True)
            try:
                assert bihomology_criterion(t1, t2) == (perspector(t1, t2, IDENTITY) is not None)
            except DegeneracyError:
                continue
            evaluated += 1
        assert evaluated >= 900

        perspective = 0
        for trial in range(200):
            try:
                t1, t2 = gen_perspective_pair(trial_rng(103, trial), 50, affine=True)
                assert bihomology_criterion(t1, t2) is True
            except DegeneracyError:
                continue
            perspective += 1
        assert perspective >= 150


class TestPairs:
    """Test pairwise homology facts over many pairs."""

    def test_never_exactly_two_modes(self):
        """Test that a pair perspective in two cyclic modes is perspective in the third."""
        for trial in range(1000):
            rng = trial_rng(104, trial)
            t1, t2 = gen_triangle(rng, 50), gen_triangle(rng, 50)
            report = homology_report(t1, t2)
            if not report.has_degenerate_mode:
                assert len(report.perspective_modes) != 2

    def test_center_iff_axis_all_correspondences(self):
        """Test center and axis existence agree for all six correspondences."""
        for trial in range(1000):
            rng = trial_rng(105, trial)
            t1, t2 = gen_triangle(rng, 50), gen_triangle(rng, 50)
            for correspondence in Correspondence.all():
                try:
                    center = perspector(t1, t2, correspondence)
                    axis = perspective_axis(t1, t2, correspondence)
                except DegeneracyError:
                    continue
                assert (center is None) == (axis is None)


class TestConstructions:
    """Test the constructions on seeded inputs."""

    def test_triplets(self):
        """Test collinear third centers and tri-homology of all three pairs."""
        built = 0
        for trial in range(500):
            rng = trial_rng(106, trial)
            abc = gen_triangle(rng, 50)
            p, q = gen_point(rng, 50), gen_point(rng, 50)
            try:
                report = trihomological_triplet(abc, p, q)
            except DegeneracyError:
                continue
            built += 1
            assert collinear(report.r, report.r1, report.r2)
            for first, second in ((abc, report.t1), (abc, report.t2), (report.t1, report.t2)):
                assert is_trihomological(first, second)
        assert built >= 400

    def test_cross_meet_triangles(self):
        """Test the shared axis and collinear centers of cross-meet triangles."""
        built = 0
        for trial in range(300):
            try:
                t1, t2 = gen_perspective_pair(trial_rng(107, trial), 50)
                t3 = veronese(t1, t2)
            except DegeneracyError:
                continue
            built += 1
            axis = perspective_axis(t1, t2, IDENTITY)
            assert perspective_axis(t1, t3, IDENTITY) == axis
            assert perspective_axis(t2, t3, IDENTITY) == axis
            centers = [perspector(a, b, IDENTITY) for a, b in ((t1, t2), (t1, t3), (t2, t3))]
            assert collinear(*centers)  # type: ignore[arg-type]
        assert built >= 250

    def test_constructions_commute_with_maps(self):
        """Test that partners and centers follow any invertible map."""
        checked = 0
        for trial in range(100):
            rng = trial_rng(108, trial)
            abc, p, q = gen_triangle(rng, 20), gen_point(rng, 20), gen_point(rng, 20)
            t = gen_projmap(rng, 5)
            try:
                t1, t2 = theorem8_triangles(abc, p, q)
            except DegeneracyError:
                continue
            moved = theorem8_triangles(apply_map(t, abc), apply_map(t, p), apply_map(t, q))
            assert moved == (apply_map(t, t1), apply_map(t, t2))
            center = perspector(abc, t1, IDENTITY)
            assert perspector(apply_map(t, abc), moved[0], IDENTITY) == (
                None if center is None else apply_map(t, center)
            )
            checked += 1
        assert checked >= 90

    def test_triplet_commutes_with_maps(self):
        """Test that third centers and the centers line follow any invertible map."""
        checked = 0
        for trial in range(100):
            rng = trial_rng(112, trial)
            abc, p, q = gen_triangle(rng, 20), gen_point(rng, 20), gen_point(rng, 20)
            t = gen_projmap(rng, 5)
            try:
                report = trihomological_triplet(abc, p, q)
            except DegeneracyError:
                continue
            moved = trihomological_triplet(apply_map(t, abc), apply_map(t, p), apply_map(t, q))
            assert (moved.t1, moved.t2) == (apply_map(t, report.t1), apply_map(t, report.t2))
            assert (moved.r, moved.r1, moved.r2) == tuple(
                apply_map(t, c) for c in (report.r, report.r1, report.r2)
            )
            assert moved.centers_line == apply_map(t, report.centers_line)
            checked += 1
        assert checked >= 90

    def test_cross_meet_triangle_commutes_with_maps(self):
        """Test veronese(M t1, M t2) == M veronese(t1, t2)."""
        checked = 0
        for trial in range(100):
            rng = trial_rng(113, trial)
            t = gen_projmap(rng, 5)
            try:
                t1, t2 = gen_perspective_pair(rng, 20)
                t3 = veronese(t1, t2)
            except DegeneracyError:
                continue
            assert veronese(apply_map(t, t1), apply_map(t, t2)) == apply_map(t, t3)
            checked += 1
        assert checked >= 80

    def test_axes_commute_with_maps(self):
        """Test that perspective axes, or their absence, follow any invertible map."""
        checked = 0
        for trial in range(100):
            rng = trial_rng(114, trial)
            t = gen_projmap(rng, 5)
            try:
                pairs = [gen_perspective_pair(rng, 20), (gen_triangle(rng, 20), gen_triangle(rng, 20))]
            except DegeneracyError:
                continue
            for t1, t2 in pairs:
                for correspondence in Correspondence.all():
                    try:
                        axis = perspective_axis(t1, t2, correspondence)
                    except DegeneracyError:
                        continue
                    moved = perspective_axis(apply_map(t, t1), apply_map(t, t2), correspondence)
                    assert moved == (None if axis is None else apply_map(t, axis))
                    checked += 1
        assert checked >= 900


class TestThreeTriangleFamilies:
    """Test the three-triangle checks on generated families."""

    def _run(self, seed: int, build, check) -> int:
        passed = 0
        for trial in range(300):
            try:
                family = build(trial_rng(seed, trial))
                check(*family)
            except DegeneracyError:
                continue
            passed += 1
        return passed

    def test_common_center(self):
        """Test concurrent axes for common-center families."""
        assert self._run(109, lambda rng: gen_common_center_family(rng, 50), theorem1_check) >= 270

    def test_common_axis(self):
        """Test collinear centers for common-axis families."""
        assert self._run(110, lambda rng: gen_common_axis_family(rng, 50), theorem2_check) >= 270

    def test_collinear_centers(self):
        """Test a single axis for families with collinear pairwise centers."""

        def build(rng: random.Random) -> tuple[Triangle, Triangle, Triangle]:
            u, v = gen_point(rng, 50), gen_point(rng, 50)
            a, b = rng.randint(1, 5), rng.randint(1, 5)
            w = ProjPoint(tuple(a * x + b * y for x, y in zip(u.coords, v.coords, strict=True)))  # type: ignore[arg-type]
            return gen_pairwise_perspective_family(rng, 50, centers=(u, v, w))

        assert self._run(111, build, theorem3_check) >= 270


class TestSearches:
    """Test both searches at full scale through the command line."""

    @pytest.mark.parametrize(
        "search",
        [["op1"], ["op2", "--family", "theorem8"], ["op2", "--family", "mode-assignment"]],
        ids=["op1", "op2-theorem8", "op2-mode-assignment"],
    )
    def test_repeatable_and_reverified(self, tmp_path, capsys, search):
        """Test byte-identical reports from two runs and re-verification of each finding."""
        texts = []
        for run in ("first", "second"):
            path = tmp_path / f"{run}.json"
            argv = ["explore", *search, "--trials", "10000", "--seed", "42", "--bound", "50"]
            assert main([*argv, "--output", str(path)]) in (0, 1)
            texts.append(ELAPSED.sub("", path.read_text(encoding="utf-8")))
        capsys.readouterr()
        assert texts[0] == texts[1]

        saved = tmp_path / "first.json"
        report = json.loads(saved.read_text(encoding="utf-8"))
        assert report["trials_attempted"] == 10000
        assert 0 < report["trials_valid"] <= report["trials_attempted"]
        summary = verify_report_file(saved)
        assert summary.all_confirmed
        assert summary.checked == len(report["counterexamples"])
        if search[-1] == "theorem8":
            assert report["status"] == "no_counterexample"
