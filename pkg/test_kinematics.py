#!/usr/bin/env python3
"""
Checks for contact geometry and stroke speeds
Run directly (python3 test_kinematics.py) or through pytest
"""
import math
import sys
import tempfile
from pathlib import Path

from src.kinematics import (
    ActuationParams,
    apparent_speed,
    critical_delay,
    derive_geometry,
    indentation_at,
    local_speed,
    read_speed_csv,
    speed_table,
    stroke_times,
    summarize_speeds,
    write_speed_csv,
)
from src.kinematics.units import (
    MOTOR_SPEED_CAP,
    STUDY_ANGULAR_VELOCITIES,
    STUDY_DELAY_FRACTIONS,
    format_angular_velocity,
    parse_angular_velocity,
    parse_delay_fraction,
)
from src.lib.errors import ConfigError, GeometryError, ParameterError

PI = math.pi


def _cm_s(omega, delay, tactors=5, spacing=20.0):
    return summarize_speeds(derive_geometry(), ActuationParams(omega, delay, tactors, spacing)).apparent_cm_s


def test_default_geometry():
    """2x = 0.995 cm and indentation endpoints"""
    print("1. Testing default geometry...")
    geometry = derive_geometry()
    assert abs(geometry.standoff - 10.5) < 1e-12
    assert abs(geometry.exit_angle - math.acos(7.5 / 9.0)) < 1e-12
    assert abs(geometry.exit_angle - 0.5857) < 1e-4
    assert abs(geometry.stroke_travel / 10.0 - 0.995) < 0.01
    assert indentation_at(geometry, 0.0) == 1.5
    assert indentation_at(geometry, geometry.exit_angle) == 0.0
    assert indentation_at(geometry, -geometry.exit_angle) == 0.0
    assert indentation_at(geometry, PI) == 0.0
    print(f"   ✓ theta={geometry.exit_angle:.4f} rad, 2x={geometry.stroke_travel:.3f} mm")


def test_indentation_curve():
    print("\n2. Testing indentation curve...")
    geometry = derive_geometry()
    angles = [i * geometry.exit_angle / 50 for i in range(-49, 50)]
    depths = indentation_at(geometry, angles)
    assert all(0.0 < depth <= 1.5 for depth in depths)
    # symmetric and peaked at 0
    assert all(abs(a - b) < 1e-12 for a, b in zip(depths, depths[::-1]))
    assert max(depths) == depths[49]
    print("   ✓ indentation symmetric, positive inside the contact window")


def test_geometry_errors():
    print("\n3. Testing geometry domain errors...")
    for args in ((0.0, 9.0, 1.5), (3.0, -1.0, 1.5), (3.0, 9.0, 0.0), (3.0, 9.0, 9.0), (3.0, 9.0, 12.0)):
        try:
            derive_geometry(*args)
        except GeometryError:
            continue
        raise AssertionError(f"{args} should be rejected")
    print("   ✓ degenerate geometries rejected")


def test_local_speeds():
    """(2pi, 4pi/3, pi, 0.8pi, 2pi/3) -> (5.3, 3.6, 2.7, 2.1, 1.8) cm/s"""
    print("\n4. Testing local speeds...")
    geometry = derive_geometry()
    expected = (5.3, 3.6, 2.7, 2.1, 1.8)
    for omega, cm_s in zip(STUDY_ANGULAR_VELOCITIES, expected):
        assert abs(local_speed(geometry, omega) / 10.0 - cm_s) < 0.05, (omega, cm_s)
    for bad in (0.0, -1.0):
        try:
            local_speed(geometry, bad)
        except ParameterError:
            continue
        raise AssertionError("non-positive omega accepted")
    print("   ✓ local speeds match")


def test_study1_table():
    """N=5, D=20: range 2.5..48.2 cm/s and the spot cells"""
    print("\n5. Testing study 1 speed table...")
    cells = speed_table(derive_geometry(), STUDY_ANGULAR_VELOCITIES, STUDY_DELAY_FRACTIONS, 5, 20.0)
    assert len(cells) == 30
    slowest = min(cells, key=lambda cell: cell.apparent_speed)
    fastest = max(cells, key=lambda cell: cell.apparent_speed)
    assert round(slowest.apparent_cm_s, 1) == 2.5
    assert (slowest.angular_velocity, slowest.delay_fraction) == (2 * PI / 3, 0.25)
    assert round(fastest.apparent_cm_s, 1) == 48.2
    assert (fastest.angular_velocity, fastest.delay_fraction) == (2 * PI, 0.0)

    for omega, delay, cm_s in ((PI, 0.10, 7.7), (PI, 0.15, 5.7), (2 * PI / 3, 0.05, 7.8), (2 * PI / 3, 0.10, 5.1)):
        assert abs(_cm_s(omega, delay) - cm_s) < 0.05, (omega, delay)
    print(f"   ✓ {slowest.apparent_cm_s:.1f}..{fastest.apparent_cm_s:.1f} cm/s")


def test_study2_table():
    """N=4, d=10%, D in {20, 30, 35, 40}: range 4.8..26.7 cm/s"""
    print("\n6. Testing study 2 speed table...")
    cells = speed_table(derive_geometry(), STUDY_ANGULAR_VELOCITIES, [0.10], 4, [20.0, 30.0, 35.0, 40.0])
    assert len(cells) == 20
    speeds = [cell.apparent_cm_s for cell in cells]
    assert abs(min(speeds) - 4.8) < 0.05
    assert abs(max(speeds) - 26.7) < 0.05
    print("   ✓ 4.8..26.7 cm/s")


def test_single_tactor():
    print("\n7. Testing N=1...")
    geometry = derive_geometry()
    half, theta = geometry.stroke_travel / 2, geometry.exit_angle
    for omega in STUDY_ANGULAR_VELOCITIES:
        for delay in STUDY_DELAY_FRACTIONS:
            params = ActuationParams(omega, delay, 1, 20.0)
            contact, _ = stroke_times(geometry, params)
            # one pass: 2x covered in 2 theta / omega
            assert abs(geometry.stroke_travel / contact - half * omega / theta) < 1e-9
            assert abs(apparent_speed(geometry, params) - half * omega / theta) < 1e-9
    print("   ✓ 2x / t equals x omega / theta")


def test_stroke_times():
    print("\n8. Testing contact and actuation times...")
    geometry = derive_geometry()
    contact, actuation = stroke_times(geometry, ActuationParams(2 * PI, 0.10, 5, 20.0))
    assert abs(contact - (geometry.exit_angle / PI + 0.4)) < 1e-12
    assert abs(actuation - 1.4) < 1e-12
    assert contact < actuation
    print(f"   ✓ t={contact:.4f} s, t_a={actuation:.4f} s")


def test_overlap_matches_interval_oracle():
    """Brute-force interval intersection agrees with d < theta/pi on all 30 cells"""
    print("\n9. Testing overlap classification...")
    geometry = derive_geometry()
    theta = geometry.exit_angle
    assert abs(critical_delay(geometry) - 0.1864) < 1e-4
    for omega in STUDY_ANGULAR_VELOCITIES:
        for delay in STUDY_DELAY_FRACTIONS:
            period = 2 * PI / omega
            windows = [
                (i * delay * period + (PI / 2 - theta) / omega, i * delay * period + (PI / 2 + theta) / omega)
                for i in range(5)
            ]
            oracle = any(a[0] < b[1] and b[0] < a[1] for a, b in zip(windows, windows[1:]))
            summary = summarize_speeds(geometry, ActuationParams(omega, delay))
            assert summary.overlapping == oracle, (omega, delay)
    assert summarize_speeds(geometry, ActuationParams(2 * PI, 0.10)).overlapping
    assert not summarize_speeds(geometry, ActuationParams(2 * PI, 0.25)).overlapping
    print("   ✓ oracle agrees on 30 conditions")


def test_ct_band():
    print("\n10. Testing CT band flag...")
    assert summarize_speeds(derive_geometry(), ActuationParams(PI, 0.10)).in_ct_band
    assert not summarize_speeds(derive_geometry(), ActuationParams(2 * PI, 0.0)).in_ct_band
    print("   ✓ 7.7 cm/s in band, 48.2 cm/s out")


def test_parameter_validation():
    print("\n11. Testing actuation parameter validation...")
    for kwargs in (
        dict(angular_velocity=0.0, delay_fraction=0.1),
        dict(angular_velocity=PI, delay_fraction=-0.1),
        dict(angular_velocity=PI, delay_fraction=1.5),
        dict(angular_velocity=PI, delay_fraction=0.1, tactor_count=0),
        dict(angular_velocity=PI, delay_fraction=0.1, spacing=0.0),
        dict(angular_velocity=PI, delay_fraction=0.1, spacing=math.nan),
        dict(angular_velocity=PI, delay_fraction=0.1, spacing=math.inf),
        dict(angular_velocity=PI, delay_fraction=0.1, tactor_count=1, spacing=math.nan),
        dict(angular_velocity=PI, delay_fraction=0.1, tactor_count=math.nan),
        dict(angular_velocity=PI, delay_fraction=math.nan),
    ):
        try:
            ActuationParams(**kwargs)
        except ParameterError:
            continue
        raise AssertionError(f"{kwargs} accepted")
    ActuationParams(MOTOR_SPEED_CAP, 0.1).check_speed_cap()
    try:
        ActuationParams(10.0, 0.1).check_speed_cap()
    except ParameterError:
        pass
    else:
        raise AssertionError("omega above 92 RPM accepted")
    print("   ✓ invalid parameters rejected")


def test_tokens():
    print("\n12. Testing angular velocity and delay tokens...")
    assert parse_angular_velocity("2pi/3") == 2 * PI / 3
    assert parse_angular_velocity("pi") == PI
    assert parse_angular_velocity("0.8pi") == 0.8 * PI
    assert parse_angular_velocity("6.5") == 6.5
    for omega in STUDY_ANGULAR_VELOCITIES:
        assert parse_angular_velocity(format_angular_velocity(omega)) == omega
    assert format_angular_velocity(2 * PI / 3) == "2pi/3"
    assert parse_delay_fraction("10%") == 0.10
    assert parse_delay_fraction("0.25") == 0.25
    assert parse_delay_fraction("15") == 0.15
    for bad in ("fast", "pi/0"):
        try:
            parse_angular_velocity(bad)
        except ConfigError as e:
            assert bad in str(e)
            continue
        raise AssertionError(f"{bad!r} accepted")
    print("   ✓ tokens parse and format")


def test_speed_csv():
    print("\n13. Testing speed table CSV...")
    cells = speed_table(derive_geometry(), STUDY_ANGULAR_VELOCITIES, STUDY_DELAY_FRACTIONS, 5, 20.0)
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "speeds.csv"
        write_speed_csv(cells, str(path), config_hash="abc")
        assert path.read_text().startswith("# hapticstroke ")
        table = read_speed_csv(str(path))
    assert list(table.index) == ["2pi", "4pi/3", "pi", "4pi/5", "2pi/3"]
    assert list(table.columns) == ["0%", "5%", "10%", "15%", "20%", "25%", "local_cm_s"]
    assert table.loc["2pi", "0%"] == 48.2
    assert table.loc["2pi/3", "25%"] == 2.5
    assert table.loc["pi", "local_cm_s"] == 2.7
    print("   ✓ CSV layout and values")


def test_standoff_reconstruction():
    print("\n14. Testing standoff reconstruction...")
    for dims in ((3.0, 9.0, 1.5), (2.0, 8.0, 1.0), (4.0, 12.0, 3.0), (5.0, 6.0, 0.5), (1.0, 20.0, 10.0)):
        g = derive_geometry(*dims)
        assert abs(g.standoff - (g.trajectory_radius * math.cos(g.exit_angle) + g.tip_radius)) < 1e-9, dims
        assert abs(g.stroke_travel / 2 - g.trajectory_radius * math.sin(g.exit_angle)) < 1e-9, dims
    print("   ✓ R_L cos(theta) + R_S gives H back")


def test_speed_ordering():
    print("\n15. Testing apparent speed ordering...")
    geometry = derive_geometry()
    omegas = sorted(STUDY_ANGULAR_VELOCITIES)
    spacings = (20.0, 30.0, 35.0, 40.0)

    def speed(omega, delay, spacing):
        return apparent_speed(geometry, ActuationParams(omega, delay, 5, spacing))

    for delay in STUDY_DELAY_FRACTIONS:
        for spacing in spacings:
            row = [speed(omega, delay, spacing) for omega in omegas]
            assert all(a < b for a, b in zip(row, row[1:])), (delay, spacing)
    for omega in omegas:
        for spacing in spacings:
            row = [speed(omega, delay, spacing) for delay in STUDY_DELAY_FRACTIONS]
            assert all(a > b for a, b in zip(row, row[1:])), (omega, spacing)
        for delay in STUDY_DELAY_FRACTIONS:
            row = [speed(omega, delay, spacing) for spacing in spacings]
            assert all(a < b for a, b in zip(row, row[1:])), (omega, delay)
    print("   ✓ rises with omega and spacing, falls with delay over 120 cells")


def test_apparent_exceeds_local():
    print("\n16. Testing apparent vs local speed...")
    cells = speed_table(derive_geometry(), STUDY_ANGULAR_VELOCITIES, STUDY_DELAY_FRACTIONS, 5, 20.0)
    assert len(cells) == 30
    for cell in cells:
        assert cell.apparent_speed > cell.local_speed, (cell.angular_velocity, cell.delay_fraction)
    print("   ✓ apparent speed above local speed in all 30 cells")


TESTS = [
    test_default_geometry,
    test_indentation_curve,
    test_geometry_errors,
    test_local_speeds,
    test_study1_table,
    test_study2_table,
    test_single_tactor,
    test_stroke_times,
    test_overlap_matches_interval_oracle,
    test_ct_band,
    test_parameter_validation,
    test_tokens,
    test_speed_csv,
    test_standoff_reconstruction,
    test_speed_ordering,
    test_apparent_exceeds_local,
]


def main():
    print("=" * 50)
    print("hapticstroke - kinematics checks")
    print("=" * 50)

    results = []
    for test in TESTS:
        try:
            test()
            results.append((test.__name__, True))
        except AssertionError as e:
            print(f"   ✗ {e}")
            results.append((test.__name__, False))

    print("\n" + "=" * 50)
    print("Summary")
    print("=" * 50)
    passed = sum(1 for _, ok in results if ok)
    for name, ok in results:
        print(f"  {'✓' if ok else '✗'} {name}")
    print(f"\n{passed}/{len(results)} tests passed")
    return 0 if passed == len(results) else 1


if __name__ == "__main__":
    sys.exit(main())
