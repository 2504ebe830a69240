import numpy as np
import pytest

from greenrecon.errors import InvalidInputError
from greenrecon.families import disk, disk_for_constant, fourier_disk, perturbed_disk
from greenrecon.geometry import (DomainBoundary, align_rotation, boundary_of,
                                 hausdorff_discretization_bound,
                                 hausdorff_distance, inradius_circumradius,
                                 largest_inscribed_circle, save_polyline,
                                 smallest_enclosing_circle)

TWO_PI = 2 * np.pi


def circle_boundary(radius=1.0, center=0j, n=256):
    theta = np.arange(n) * (TWO_PI / n)
    return DomainBoundary(points=center + radius * np.exp(1j * theta),
                          zeta_o=center, arclengths=radius * theta, thetas=theta)


class TestDomainBoundary:
    def test_winding_validation(self):
        theta = np.arange(64) * (TWO_PI / 64)
        points = np.exp(1j * theta)
        with pytest.raises(InvalidInputError):
            DomainBoundary(points=points, zeta_o=2.0 + 0j, arclengths=theta)

    def test_from_map(self):
        b = boundary_of(perturbed_disk(0.1), 128)
        assert b.n == 128
        assert b.zeta_o == 0
        assert np.all(np.diff(b.arclengths) > 0)


class TestRadii:
    def test_circle(self):
        rho, big_r = inradius_circumradius(circle_boundary(radius=0.7, center=1j))
        assert rho == pytest.approx(0.7, abs=1e-14)
        assert big_r == pytest.approx(0.7, abs=1e-14)

    def test_quadratic_perturbation(self):
        b = boundary_of(perturbed_disk(0.1), 1024)
        rho, big_r = inradius_circumradius(b)
        assert rho == pytest.approx(0.9, abs=1e-6)
        assert big_r == pytest.approx(1.1, abs=1e-6)

    def test_ellipse_samples(self):
        a, bb, n = 2.0, 1.0, 256
        theta = np.arange(n) * (TWO_PI / n)
        pts = a * np.cos(theta) + 1j * bb * np.sin(theta)
        chord = np.cumsum(np.abs(np.diff(np.concatenate([[pts[-1]], pts]))))
        boundary = DomainBoundary(points=pts, zeta_o=0j,
                                  arclengths=chord, thetas=theta)
        rho, big_r = inradius_circumradius(boundary)
        assert rho == pytest.approx(1.0, abs=1e-12)
        assert big_r == pytest.approx(2.0, abs=1e-12)

    def test_rho_le_R(self):
        for eps in (0.0, 0.05, 0.2):
            rho, big_r = inradius_circumradius(boundary_of(perturbed_disk(eps), 256))
            assert rho <= big_r + 1e-15

    def test_radii_gap_below_map_gap(self):
        # the circumradius/inradius gap never exceeds the sup distance to the
        # constant-datum disk map of radius rho, whatever its rotation
        for eps in (0.05, 0.1, 0.2):
            f = perturbed_disk(eps)
            b = boundary_of(f, 512)
            rho, big_r = inradius_circumradius(b)
            f_c = disk_for_constant(1.0 / (TWO_PI * rho))
            gap = np.max(np.abs(b.points - boundary_of(f_c, 512).points))
            assert big_r - rho <= gap + 1e-12


class TestHausdorff:
    def test_identical(self):
        b = circle_boundary()
        assert hausdorff_distance(b, b) == 0.0

    def test_concentric_circles(self):
        b1 = circle_boundary(radius=1.0)
        b2 = circle_boundary(radius=1.3)
        assert hausdorff_distance(b1, b2) == pytest.approx(0.3, abs=1e-13)

    def test_circle_vs_quadratic_image(self):
        n = 512
        b1 = circle_boundary(n=n)
        b2 = boundary_of(perturbed_disk(0.1), n)
        d = hausdorff_distance(b1, b2)
        tolerance = 2 * max(b1.max_edge(), b2.max_edge())
        assert abs(d - 0.1) <= tolerance
        assert hausdorff_discretization_bound(b1, b2) == pytest.approx(
            0.5 * max(b1.max_edge(), b2.max_edge()))

    def test_metric_properties(self):
        b1 = circle_boundary(radius=1.0)
        b2 = boundary_of(perturbed_disk(0.1), 256)
        b3 = boundary_of(fourier_disk({2: 0.05, 3: 0.03}), 256)
        d12 = hausdorff_distance(b1, b2)
        d21 = hausdorff_distance(b2, b1)
        assert d12 == d21  # symmetry, exact
        assert d12 > 0
        d13 = hausdorff_distance(b1, b3)
        d23 = hausdorff_distance(b2, b3)
        assert d13 <= d12 + d23 + 1e-15

    def test_rotation_invariance(self):
        b1 = boundary_of(perturbed_disk(0.1), 256)
        b2 = boundary_of(fourier_disk({2: 0.05, 3: 0.03}), 256)
        d = hausdorff_distance(b1, b2)
        phase = np.exp(0.9j)
        r1 = DomainBoundary(points=phase * b1.points, zeta_o=0j,
                            arclengths=b1.arclengths)
        r2 = DomainBoundary(points=phase * b2.points, zeta_o=0j,
                            arclengths=b2.arclengths)
        assert hausdorff_distance(r1, r2) == pytest.approx(d, abs=1e-12)


class TestAlignRotation:
    def test_identical_maps(self):
        f = perturbed_disk(0.1)
        gamma, rotated = align_rotation(f, f, mode="proof")
        assert gamma == 0.0
        assert np.array_equal(rotated.coefficients, f.coefficients)

    def test_optimal_recovers_rotation(self):
        f1 = perturbed_disk(0.1)
        gamma0 = 0.8
        f2 = f1.rotated(gamma0)
        gamma, rotated = align_rotation(f1, f2, mode="optimal", n=512)
        assert abs((gamma + gamma0 + np.pi) % TWO_PI - np.pi) <= 1e-8
        residual = np.max(np.abs(boundary_of(f1, 512).points
                                 - boundary_of(rotated, 512).points))
        assert residual <= 1e-10

    def test_proof_mode_matches_rotation_constants(self):
        f1 = perturbed_disk(0.1)
        f2 = f1.rotated(0.8)
        gamma, rotated = align_rotation(f1, f2, mode="proof")
        assert np.angle(rotated.coefficients[1]) == pytest.approx(0.0, abs=1e-14)

    def test_optimal_no_worse_than_proof(self):
        f1 = perturbed_disk(0.1)
        f2 = fourier_disk({2: 0.08, 3: 0.04}).rotated(0.3)
        n = 256

        def residual(rotated):
            return np.max(np.abs(boundary_of(f1, n).points
                                 - boundary_of(rotated, n).points))

        _, by_proof = align_rotation(f1, f2, mode="proof", n=n)
        _, by_opt = align_rotation(f1, f2, mode="optimal", n=n)
        assert residual(by_opt) <= residual(by_proof) + 1e-14

    def test_distinct_base_points_rejected(self):
        with pytest.raises(InvalidInputError):
            align_rotation(disk(zeta_o=0j), disk(zeta_o=1j), mode="proof")


class TestFreeCenterDisks:
    def test_regular_polygon_radii(self):
        n = 256
        b = circle_boundary(n=n)
        _, big_r = smallest_enclosing_circle(b.points)
        assert big_r == pytest.approx(1.0, abs=1e-9)
        _, rho = largest_inscribed_circle(b)
        # the inscribed circle of the polyline is the polygon's incircle
        assert rho == pytest.approx(np.cos(np.pi / n), abs=1e-7)

    def test_offset_circle(self):
        b = circle_boundary(radius=0.5, center=0.2 + 0.1j, n=128)
        center, big_r = smallest_enclosing_circle(b.points)
        assert abs(center - (0.2 + 0.1j)) <= 1e-7
        assert big_r == pytest.approx(0.5, abs=1e-8)


class TestPolylineExport:
    def test_csv_structure(self, tmp_path):
        b = boundary_of(perturbed_disk(0.1), 64)
        path = tmp_path / "poly.csv"
        save_polyline(path, b)
        lines = path.read_text().splitlines()
        assert lines[0] == "theta,s,re,im"
        assert len(lines) == 65
        first = [float(x) for x in lines[1].split(",")]
        assert first[0] == 0.0 and first[2] == pytest.approx(1.1)
