import sys
from pathlib import Path

import numpy as np

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))
from src.scheduler import read_stream


def inspect(path: str):
    print(f"Inspecting {path}...")
    meta, names, data = read_stream(path)

    print(f"Metadata: {meta}")
    print(f"Samples: {data.shape[0]}  Columns: {len(names)}")
    print(f"Time: {data[0, 0]:.4f} .. {data[-1, 0]:.4f} s")

    for column, name in enumerate(names[1:], start=1):
        values = data[:, column]
        print(f"  {name:<22} min {values.min():9.5f}  max {values.max():9.5f}")

    errors = [i for i, name in enumerate(names) if name.endswith("_error_rad")]
    if errors:
        worst = np.abs(data[:, errors]).max()
        print(f"\nWorst tracking error: {worst:.5f} rad")


if __name__ == "__main__":
    if len(sys.argv) != 2:
        print("usage: python3 scripts/inspect_stream.py STREAM.csv")
        sys.exit(2)
    inspect(sys.argv[1])
