"""
Application settings and configuration

All numerical tolerances, simulation defaults and file locations live here.
Every value can be overridden from a .env file in the project root (or the
process environment); otherwise the default shown here is used.
"""
import os
from dotenv import load_dotenv

# Load environment variables from .env file (if it exists)
load_dotenv()


class Settings:
    """
    Toolkit configuration settings

    Values are read once at import time. The CLI flags (--tol, --mode,
    --trials, --seed) override the matching defaults per invocation.
    """

    # ============================================================
    # Numerical Tolerances
    # ============================================================
    # Max-entry tolerance used by every equality check (projector, unitarity,
    # Knill-Laflamme, group relations)
    TOLERANCE = float(os.getenv("TOLERANCE", "1e-9"))
    # Operators with a larger spectral norm are rescaled before synthesis
    MAX_OPERATOR_NORM = float(os.getenv("MAX_OPERATOR_NORM", "10"))
    # Degenerate errors merge when their residual norm < TOLERANCE * dim(H_C) * scale
    DEGENERACY_SCALE = float(os.getenv("DEGENERACY_SCALE", "1.0"))
    # Minimum norm of a projected seed vector in stabilized_state
    SEED_SEARCH_NORM = float(os.getenv("SEED_SEARCH_NORM", "1e-6"))
    # Renormalizing a code-file amplitude vector by more than this logs a warning
    RENORMALIZE_WARNING = float(os.getenv("RENORMALIZE_WARNING", "1e-6"))

    # ============================================================
    # Space Limits
    # ============================================================
    # Dense matrices are refused beyond 2^MAX_DENSE_QUBITS dimensions
    MAX_DENSE_QUBITS = int(os.getenv("MAX_DENSE_QUBITS", "12"))
    # Default Fock truncation N_max per mode (levels 0..N_max)
    FOCK_CUTOFF = int(os.getenv("FOCK_CUTOFF", "8"))

    # ============================================================
    # Synthesis Defaults
    # ============================================================
    # "minimal" or "extended_full"
    DEFAULT_MODE = os.getenv("DEFAULT_MODE", "minimal")

    # ============================================================
    # Monte Carlo Settings
    # ============================================================
    MC_TRIALS = int(os.getenv("MC_TRIALS", "10000"))
    MC_SEED = int(os.getenv("MC_SEED", "7"))
    # Worker threads; results never depend on this value
    MC_WORKERS = int(os.getenv("MC_WORKERS", "1"))
    # A trial counts as a success above this recovered fidelity
    SUCCESS_FIDELITY = float(os.getenv("SUCCESS_FIDELITY", str(1 - 1e-6)))

    # ============================================================
    # Files and Formats
    # ============================================================
    CODE_FILE_VERSION = int(os.getenv("CODE_FILE_VERSION", "1"))
    FIXTURES_DIR = os.getenv("FIXTURES_DIR", "fixtures")
    REPORTS_DIR = os.getenv("REPORTS_DIR", "reports")

    # ============================================================
    # Logging
    # ============================================================
    LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")
    LOG_FILE = os.getenv("LOG_FILE", "logs/paulian.log")

    @staticmethod
    def ensure_directories():
        """Create output directories if they don't exist"""
        os.makedirs(Settings.REPORTS_DIR, exist_ok=True)
        log_dir = os.path.dirname(Settings.LOG_FILE)
        if log_dir:
            os.makedirs(log_dir, exist_ok=True)


# Global settings instance
settings = Settings()
