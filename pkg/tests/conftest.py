import sys
from pathlib import Path

import pytest

RAIZ = Path(__file__).resolve().parents[1]
if str(RAIZ) not in sys.path:
    sys.path.insert(0, str(RAIZ))

from registro import temporary_log_callback  # noqa: E402


@pytest.fixture
def linhas_log():
    """Captura o que `log`/`log_etapa` imprimiriam."""
    capturadas = []
    with temporary_log_callback(capturadas.append):
        yield capturadas
