#!/usr/bin/env python3
"""
Hierarquia de erros.

- InputError: precondicao violada pelo chamador (a CLI responde com codigo 2).
- BudgetExhausted: busca interrompida pelo orcamento de nos (inconclusivo, codigo 3).
- StepFailure: um passo construtivo nao encontrou os objetos exigidos na escala dada.
- InvariantViolation: algo que a construcao garante falhou; trate como bug.
"""

from __future__ import annotations

from typing import Dict, Optional


class InputError(ValueError):
    pass


class SizeGuardError(InputError):
    """Instancia grande demais para um oraculo exato."""


class BudgetExhausted(RuntimeError):
    def __init__(self, msg: str = "orcamento de nos esgotado", nodes: int = 0):
        super().__init__(msg)
        self.nodes = nodes


class StepFailure(RuntimeError):
    def __init__(self, etapa: str, msg: str, detalhes: Optional[Dict[str, object]] = None):
        super().__init__(f"[{etapa}] {msg}")
        self.etapa = etapa
        self.detalhes: Dict[str, object] = dict(detalhes or {})

    def to_dict(self) -> Dict[str, object]:
        return {"etapa": self.etapa, "erro": str(self), "detalhes": self.detalhes}


class StagedFailure(StepFailure):
    def __init__(self, estagio: str, etapa: str, msg: str, detalhes: Optional[Dict[str, object]] = None):
        super().__init__(etapa, msg, detalhes)
        self.estagio = estagio

    def to_dict(self) -> Dict[str, object]:
        dados = super().to_dict()
        dados["estagio"] = self.estagio
        return dados


class InvariantViolation(AssertionError):
    def __init__(self, msg: str, estado: Optional[Dict[str, object]] = None):
        super().__init__(msg)
        self.estado: Dict[str, object] = dict(estado or {})


def garantir(condicao: bool, msg: str, **estado) -> None:
    if not condicao:
        raise InvariantViolation(msg, estado)
