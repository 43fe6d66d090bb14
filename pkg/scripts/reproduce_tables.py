"""
Print the apparent-speed tables for both study designs and save them as CSV
"""
import sys
from pathlib import Path

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))
from src.config import DeviceConfig, config
from src.kinematics import speed_frame, speed_table, write_speed_csv
from src.kinematics.units import STUDY_ANGULAR_VELOCITIES, STUDY_DELAY_FRACTIONS
from src.study.plans import STUDY1_SPACING, STUDY1_TACTORS, STUDY2_DELAY, STUDY2_SPACINGS, STUDY2_TACTORS


def reproduce():
    device = DeviceConfig.load_or_default(config.DEVICE_CONFIG)
    geometry = device.geometry()
    designs = {
        "study1": speed_table(geometry, STUDY_ANGULAR_VELOCITIES, STUDY_DELAY_FRACTIONS, STUDY1_TACTORS, STUDY1_SPACING),
        "study2": speed_table(geometry, STUDY_ANGULAR_VELOCITIES, [STUDY2_DELAY], STUDY2_TACTORS, list(STUDY2_SPACINGS)),
    }

    for name, cells in designs.items():
        print(f"\n{name}: apparent speed [cm/s]")
        print(speed_frame(cells).round(1).to_string())
        path = write_speed_csv(cells, str(Path(config.OUTPUT_DIR) / f"{name}_speeds.csv"), device.config_hash())
        speeds = [cell.apparent_cm_s for cell in cells]
        print(f"range {min(speeds):.1f}..{max(speeds):.1f} cm/s -> {path}")


if __name__ == "__main__":
    reproduce()
