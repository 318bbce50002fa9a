#!/usr/bin/env python3
"""
Saida de log compartilhada: texto humano (`log`) e linhas JSON por etapa (`log_etapa`).

O destino pode ser trocado por um callback (testes e execucoes em lote capturam
as linhas em vez de imprimir).
"""

from __future__ import annotations

import json
import threading
from contextlib import contextmanager
from decimal import Decimal
from fractions import Fraction
from typing import Callable, Optional

from configuracao import agora_iso

PRINT_LOCK = threading.Lock()
LOG_CALLBACK: Optional[Callable[[str], None]] = None


def set_log_callback(callback: Optional[Callable[[str], None]]) -> None:
    global LOG_CALLBACK
    LOG_CALLBACK = callback


@contextmanager
def temporary_log_callback(callback: Optional[Callable[[str], None]]):
    previous = LOG_CALLBACK
    set_log_callback(callback)
    try:
        yield
    finally:
        set_log_callback(previous)


def log(msg: str) -> None:
    callback = LOG_CALLBACK
    if callback:
        callback(msg)
        return
    with PRINT_LOCK:
        print(msg, flush=True)


def _json_default(valor):
    if isinstance(valor, Fraction):
        return f"{valor.numerator}/{valor.denominator}"
    if isinstance(valor, Decimal):
        return str(valor)
    if isinstance(valor, (set, frozenset)):
        return sorted(valor, key=repr)
    if hasattr(valor, "to_dict"):
        return valor.to_dict()
    raise TypeError(f"Objeto nao serializavel: {type(valor).__name__}")


def para_json(dados, **kwargs) -> str:
    return json.dumps(dados, default=_json_default, ensure_ascii=False, **kwargs)


def log_etapa(etapa: str, **campos) -> None:
    """Emite uma linha JSON `{"etapa": ..., "ts": ..., ...}`."""
    registro = {"etapa": etapa, "ts": agora_iso()}
    registro.update(campos)
    log(para_json(registro, sort_keys=True))
