"""
Grid-search PID gains around the configured values and print the set with
the smallest worst-case tracking error over all 30 study-1 conditions.

    python3 scripts/tune_gains.py --kp 0.5,1,2 --ki 0.5,1,2 --kd 0.5,1,2
"""
import argparse
import itertools
import sys
from dataclasses import replace
from pathlib import Path

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))
from src.config import DeviceConfig, config
from src.kinematics import ActuationParams
from src.kinematics.units import STUDY_ANGULAR_VELOCITIES, STUDY_DELAY_FRACTIONS
from src.lib.errors import InstabilityError
from src.motorsim import PidGains, simulate_schedule
from src.scheduler import build_schedule


def _scales(text: str):
    return [float(token) for token in text.split(",") if token.strip()]


def worst_error(device: DeviceConfig, gains: PidGains, schedules) -> float:
    """Largest max |e| over every schedule; inf when the loop diverges"""
    model = device.motor_model()
    worst = 0.0
    for schedule in schedules:
        try:
            worst = max(worst, simulate_schedule(model, gains, schedule).max_abs_error)
        except InstabilityError:
            return float("inf")
    return worst


def tune(device: DeviceConfig, kp_scales, ki_scales, kd_scales):
    geometry = device.geometry()
    schedules = [
        build_schedule(
            geometry, ActuationParams(omega, delay, device.tactor_count, device.spacing),
            tick_rate=device.tick_rate, pre_roll=device.pre_roll, post_roll=device.post_roll,
        )
        for omega in STUDY_ANGULAR_VELOCITIES
        for delay in STUDY_DELAY_FRACTIONS
    ]

    base = device.gains()
    best = None
    for kp_scale, ki_scale, kd_scale in itertools.product(kp_scales, ki_scales, kd_scales):
        gains = replace(base, kp=base.kp * kp_scale, ki=base.ki * ki_scale, kd=base.kd * kd_scale)
        worst = worst_error(device, gains, schedules)
        print(f"kp={gains.kp:<8.4g} ki={gains.ki:<8.4g} kd={gains.kd:<10.4g} worst max |e| = {worst:.5f} rad")
        if best is None or worst < best[1]:
            best = (gains, worst)

    gains, worst = best
    flag = "within" if worst < device.tracking_tolerance else "OUTSIDE"
    print(f"\nBest: kp={gains.kp:.4g} ki={gains.ki:.4g} kd={gains.kd:.4g} "
          f"({worst:.5f} rad, {flag} the {device.tracking_tolerance:g} rad tolerance)")
    return best


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description="PID gain grid search")
    parser.add_argument("--config", help="device config INI")
    parser.add_argument("--kp", default="0.5,1,2", help="comma-separated multipliers of the configured kp")
    parser.add_argument("--ki", default="0.5,1,2", help="comma-separated multipliers of the configured ki")
    parser.add_argument("--kd", default="0.5,1,2", help="comma-separated multipliers of the configured kd")
    args = parser.parse_args()

    device = DeviceConfig.load(args.config) if args.config else DeviceConfig.load_or_default(config.DEVICE_CONFIG)
    tune(device, _scales(args.kp), _scales(args.ki), _scales(args.kd))
