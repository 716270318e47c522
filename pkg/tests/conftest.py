"""
Shared pytest fixtures for superbethe tests.
Provides gradings, exact Bethe data, on-shell chain data and run configurations.
"""

import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict

import numpy as np
import pytest

# Add the scripts directory to path
sys.path.insert(0, str(Path(__file__).parent.parent / "scripts"))

import console  # noqa: E402
from duality import grading_path_transform, vacuum_solution  # noqa: E402
from bethe import BAESystem  # noqa: E402
from dvf import BetheData  # noqa: E402
from ratfun import EXACT  # noqa: E402
from superalgebra import Grading  # noqa: E402

# Three sites; no two differ by 2, which would produce singular roots
CHAIN_SITES = (0, 1, 5)


# ============================================================================
# FIXTURE: Console
# ============================================================================

@pytest.fixture(autouse=True)
def quiet_console():
    """Silence status lines; warnings still reach stderr."""
    console.set_quiet(True)
    yield
    console.set_quiet(False)


# ============================================================================
# FIXTURE: Gradings
# ============================================================================

@pytest.fixture
def g_sl21_mixed() -> Grading:
    """sl(2|1) in the grading (+,-,+)."""
    return Grading.parse("+-+")


@pytest.fixture
def g_sl12_distinguished() -> Grading:
    return Grading.parse("+--")


@pytest.fixture
def g_sl2() -> Grading:
    return Grading.parse("++")


# ============================================================================
# FIXTURE: Exact Bethe data
# ============================================================================

@pytest.fixture
def worked_example_data(g_sl21_mixed) -> BetheData:
    """Exact rational roots for sl(2|1), grading (+,-,+)."""
    return BetheData(
        g_sl21_mixed,
        ((Fraction(1, 3), Fraction(-2)), (Fraction(5, 7),)),
        (Fraction(0), Fraction(1, 2)),
        EXACT,
    )


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


# ============================================================================
# FIXTURE: On-shell data from the particle-hole chain
# ============================================================================

@pytest.fixture
def sl12_vacuum() -> BetheData:
    """sl(1|2), grading (+,-,-), no roots, sites (0, 1, 5)."""
    return vacuum_solution(BAESystem(Grading.parse("+--"), (0, 0), CHAIN_SITES))


@pytest.fixture
def sl12_chain(sl12_vacuum):
    """(+,-,-) -> (-,+,-) -> (-,-,+) by particle-hole at colors 1 then 2."""
    return grading_path_transform(sl12_vacuum, None, [1, 2])


@pytest.fixture
def sl12_middle(sl12_chain) -> BetheData:
    """(-,+,-) with color-1 roots 2 +- sqrt(2)."""
    return sl12_chain.steps[0].new_data


@pytest.fixture
def sl12_final(sl12_chain) -> BetheData:
    """(-,-,+) with color-1 roots 2 +- sqrt(2) and color-2 root 2."""
    return sl12_chain.data


@pytest.fixture
def sl21_chain():
    """sl(2|1): (-,+,+) -> (+,-,+) -> (+,+,-)."""
    start = vacuum_solution(BAESystem(Grading.parse("-++"), (0, 0), CHAIN_SITES))
    return grading_path_transform(start, None, [1, 2])


# ============================================================================
# FIXTURE: Configurations
# ============================================================================

@pytest.fixture
def sample_run_config() -> Dict[str, Any]:
    """Valid run configuration overriding a few defaults."""
    return {
        "r": 1,
        "s": 0,
        "grading": "+-+",
        "shape": "2,1",
        "seed": 7,
        "backend": "exact",
        "tolerances": {"bae": 1e-10, "residue": 1e-8},
        "solver": {"seeds": 16, "box": [-3.0, 3.0, -3.0, 3.0]},
        "verify": {"method": "sampled", "max_shape_side": 2},
        "debug_mode": {"enabled": False},
    }


@pytest.fixture
def sl2_system_file(tmp_path) -> Path:
    path = tmp_path / "sl2.yml"
    path.write_text("grading: [1, 1]\nn_roots: [1]\ninhomogeneities: [0, 0]\n")
    return path
