"""primstab: BQ, primitive stability and bounded intersections for SL(2,C) characters of F2."""

__version__ = "0.1.0"
