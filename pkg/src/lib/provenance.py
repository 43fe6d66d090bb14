"""
Provenance header line stamped on every output artifact
"""
from typing import Optional

from .. import __version__


def provenance_header(config_hash: str = "-", seed: Optional[int] = None) -> str:
    """One comment line: tool version, device config hash and seed (no trailing newline)"""
    seed_text = "-" if seed is None else str(seed)
    return f"# hapticstroke {__version__} config={config_hash} seed={seed_text}"


def is_comment(line: str) -> bool:
    return line.lstrip().startswith("#")
