"""
hapticstroke - rendering and simulation toolkit for continuous stroking
sensations produced by sequential discrete lateral skin-slip.
"""

__version__ = "1.0.0"
