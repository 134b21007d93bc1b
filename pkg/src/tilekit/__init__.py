"""k-colored domino tilings of the Aztec diamond and lozenge k-tilings of hexagons."""

__version__ = "0.1.0"
