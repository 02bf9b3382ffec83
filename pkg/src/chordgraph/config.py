"""
Configuration settings for chordgraph
"""
import os
from dotenv import load_dotenv

load_dotenv()


class Config:
    """Library and service configuration"""

    # Numeric tolerances (relative to the instance scale unless noted)
    ORIENTATION_TOLERANCE: float = float(os.getenv("ORIENTATION_TOLERANCE", "1e-12"))
    DUPLICATE_TOLERANCE: float = float(os.getenv("DUPLICATE_TOLERANCE", "1e-9"))
    ANGLE_TOLERANCE_DEG: float = float(os.getenv("ANGLE_TOLERANCE_DEG", "1e-9"))
    SELF_APPROACH_EPSILON: float = float(os.getenv("SELF_APPROACH_EPSILON", "1e-9"))
    GABRIEL_TOLERANCE: float = float(os.getenv("GABRIEL_TOLERANCE", "1e-12"))
    PERTURBATION_SCALE: float = float(os.getenv("PERTURBATION_SCALE", "1e-7"))

    # Search and construction limits
    GENERATOR_MAX_RETRIES: int = int(os.getenv("GENERATOR_MAX_RETRIES", "200"))
    EXHAUSTIVE_MAX_POINTS: int = int(os.getenv("EXHAUSTIVE_MAX_POINTS", "12"))
    STEINER_ROUNDS_PER_POINT: int = int(os.getenv("STEINER_ROUNDS_PER_POINT", "50"))
    DETOUR_BOUND: float = float(os.getenv("DETOUR_BOUND", "2.094"))

    # Run history
    DATABASE_URL: str = os.getenv("DATABASE_URL", "sqlite:///./chordgraph_runs.db")

    # Service Configuration
    DEBUG: bool = os.getenv("DEBUG", "False").lower() == "true"
    HOST: str = os.getenv("HOST", "0.0.0.0")
    PORT: int = int(os.getenv("PORT", "8000"))
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "WARNING")

    @classmethod
    def validate(cls) -> bool:
        """Validate tolerances and limits"""
        for name in ("ORIENTATION_TOLERANCE", "DUPLICATE_TOLERANCE", "ANGLE_TOLERANCE_DEG",
                     "SELF_APPROACH_EPSILON", "GABRIEL_TOLERANCE", "PERTURBATION_SCALE"):
            value = getattr(cls, name)
            if not 0 <= value < 1:
                raise ValueError(f"{name} must lie in [0, 1), got {value}")
        if cls.EXHAUSTIVE_MAX_POINTS < 2:
            raise ValueError("EXHAUSTIVE_MAX_POINTS must be at least 2")
        if cls.GENERATOR_MAX_RETRIES < 1 or cls.STEINER_ROUNDS_PER_POINT < 0:
            raise ValueError("retry and round limits must be positive")
        if not cls.DATABASE_URL:
            raise ValueError("DATABASE_URL is required")
        return True
