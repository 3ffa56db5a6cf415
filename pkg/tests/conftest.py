import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from envsos.lie import builtin

BUILTIN_NAMES = ["abelian(3)", "su2", "heisenberg3", "affine_line", "sl2r"]


@pytest.fixture(scope="session")
def builtins():
    return {name: builtin(name) for name in BUILTIN_NAMES}


@pytest.fixture(scope="session")
def su2():
    return builtin("su2")
