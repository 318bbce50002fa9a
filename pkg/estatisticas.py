#!/usr/bin/env python3
"""
Agrega relatorios JSON da CLI em tabela (CSV e XLSX) e dados de grafico (JSON).

Resumo do fluxo:
- Le cada relatorio e confere que todos tem o mesmo esquema e pipeline; os divergentes sao
  listados em um unico InputError.
- Extrai uma linha por relatorio (colunas comuns + a contagem principal do pipeline).
- Agrupa: contagem vs theorem_bound(k, r), sobra media por ε (cobertura gulosa) e os
  histogramas de concentracao das fatias por permutacao (blowup).
- Grava `<prefixo>.csv`, `<prefixo>.xlsx` e `<prefixo>-grafico.json`. Nada e desenhado.

Dependencias:
    openpyxl (escrita do XLSX)

Uso esperado:
    python3 ciclos_cli.py stats relatorios/*.json --out saida/estatisticas
"""

from __future__ import annotations

import csv
import json
import math
import sys
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from statistics import mean
from typing import Dict, List, Optional, Sequence, Tuple

try:
    from openpyxl import Workbook  # type: ignore
except ImportError:  # pragma: no cover - tratamos erros em tempo de execucao
    sys.stderr.write("[ERRO] Dependencia ausente: openpyxl. Instale com 'pip install openpyxl'.\n")
    raise

from ciclos_apertados import theorem_bound
from falhas import InputError
from registro import log, para_json

ESQUEMA_RELATORIO = "ciclos/relatorio-v1"

COLUNAS = [
    "arquivo",
    "pipeline",
    "k",
    "n",
    "r",
    "cores",
    "semente",
    "ok",
    "contagem",
    "limite_teorema_log2",
    "epsilon",
    "sobra",
    "fracao_sobra",
    "ramo",
]

# --------------------------------------------------------------------------------------
# Leitura
# --------------------------------------------------------------------------------------


def carregar_relatorios(caminhos: Sequence[Path]) -> List[Tuple[Path, Dict[str, object]]]:
    if not caminhos:
        raise InputError("Informe ao menos um relatorio.")
    relatorios = []
    for caminho in caminhos:
        caminho = Path(caminho)
        try:
            dados = json.loads(caminho.read_text(encoding="utf-8"))
        except FileNotFoundError as exc:
            raise InputError(f"Arquivo nao encontrado: {caminho}") from exc
        except json.JSONDecodeError as exc:
            raise InputError(f"{caminho}: JSON invalido ({exc.msg}, linha {exc.lineno})") from exc
        if not isinstance(dados, dict):
            raise InputError(f"{caminho}: relatorio deve ser um objeto JSON.")
        relatorios.append((caminho, dados))
    return relatorios


def checar_esquema(relatorios: Sequence[Tuple[Path, Dict[str, object]]]) -> str:
    """Referencia = (esquema, pipeline) do primeiro relatorio; devolve o pipeline comum."""
    _, primeiro = relatorios[0]
    referencia = (primeiro.get("schema"), primeiro.get("pipeline"))
    divergentes = [
        f"{caminho.name} (schema={dados.get('schema')}, pipeline={dados.get('pipeline')})"
        for caminho, dados in relatorios
        if (dados.get("schema"), dados.get("pipeline")) != referencia or dados.get("schema") != ESQUEMA_RELATORIO
    ]
    if divergentes:
        raise InputError(
            f"Relatorios com esquema misto (referencia schema={referencia[0]}, pipeline={referencia[1]}): "
            + ", ".join(divergentes)
        )
    return str(referencia[1])


# --------------------------------------------------------------------------------------
# Linhas
# --------------------------------------------------------------------------------------


def _limite_log2(k: Optional[int], r: Optional[int]) -> Optional[float]:
    if not k or not r or k < 3:
        return None
    return round(math.log2(theorem_bound(int(k), int(r))), 6)


def linha_de(caminho: Path, relatorio: Dict[str, object]) -> Dict[str, object]:
    instancia = relatorio.get("instance") or {}
    resultado = relatorio.get("result") or {}
    config = relatorio.get("config") or {}
    pipeline = relatorio.get("pipeline")
    k, n, r = instancia.get("k"), instancia.get("n"), instancia.get("r")
    linha: Dict[str, object] = {coluna: None for coluna in COLUNAS}
    linha.update(
        arquivo=caminho.name,
        pipeline=pipeline,
        k=k,
        n=n,
        r=r,
        cores=instancia.get("colours"),
        semente=config.get("seed"),
        ok=bool(relatorio.get("ok")),
    )

    if pipeline == "cover":
        sobra = len(resultado.get("leftover", []))
        linha.update(
            contagem=len(resultado.get("cycles", [])),
            limite_teorema_log2=_limite_log2(k, r),
            epsilon=resultado.get("epsilon"),
            sobra=sobra,
            fracao_sobra=round(sobra / n, 6) if n else None,
        )
    elif pipeline == "rainbow-system":
        linha.update(contagem=resultado.get("count"), ramo=resultado.get("branch"))
    elif pipeline == "dense-matching":
        linha.update(contagem=len(resultado.get("matching", [])), ramo=resultado.get("mode"))
    elif pipeline == "blowup":
        linha.update(contagem=(resultado.get("count") or {}).get("count"))
    elif pipeline == "oracle-compare":
        linha.update(contagem=resultado.get("oracle"), limite_teorema_log2=_limite_log2(k, r))
    return linha


# --------------------------------------------------------------------------------------
# Agregacao
# --------------------------------------------------------------------------------------


@dataclass
class Agregado:
    pipeline: str
    linhas: List[Dict[str, object]] = field(default_factory=list)
    sobra_por_epsilon: List[Dict[str, object]] = field(default_factory=list)
    contagem_vs_limite: List[Dict[str, object]] = field(default_factory=list)
    histogramas: List[Dict[str, object]] = field(default_factory=list)

    def dados_grafico(self) -> Dict[str, object]:
        return {
            "pipeline": self.pipeline,
            "series": {
                "count_vs_bound": self.contagem_vs_limite,
                "leftover_vs_epsilon": self.sobra_por_epsilon,
                "slice_histograms": self.histogramas,
            },
        }


def agregar(relatorios: Sequence[Tuple[Path, Dict[str, object]]]) -> Agregado:
    pipeline = checar_esquema(relatorios)
    agregado = Agregado(pipeline, [linha_de(caminho, dados) for caminho, dados in relatorios])

    por_epsilon: Dict[float, List[float]] = defaultdict(list)
    for linha in agregado.linhas:
        if linha["epsilon"] is not None and linha["fracao_sobra"] is not None:
            por_epsilon[float(linha["epsilon"])].append(float(linha["fracao_sobra"]))
        if linha["contagem"] is not None:
            agregado.contagem_vs_limite.append(
                {"n": linha["n"], "count": linha["contagem"], "bound_log2": linha["limite_teorema_log2"]}
            )
    agregado.sobra_por_epsilon = [
        {"epsilon": eps, "mean_leftover_fraction": round(mean(valores), 6), "runs": len(valores)}
        for eps, valores in sorted(por_epsilon.items())
    ]

    for caminho, dados in relatorios:
        fatia = (dados.get("result") or {}).get("slice")
        if fatia and fatia.get("histogram"):
            agregado.histogramas.append(
                {
                    "arquivo": caminho.name,
                    "expectation": fatia.get("expectation"),
                    "mean": fatia.get("mean"),
                    "histogram": fatia.get("histogram"),
                }
            )
    return agregado


# --------------------------------------------------------------------------------------
# Escrita
# --------------------------------------------------------------------------------------


def gravar_csv(linhas: Sequence[Dict[str, object]], caminho: Path) -> Path:
    caminho.parent.mkdir(parents=True, exist_ok=True)
    with caminho.open("w", newline="", encoding="utf-8") as arquivo:
        escritor = csv.writer(arquivo)
        escritor.writerow(COLUNAS)
        for linha in linhas:
            escritor.writerow(["" if linha[c] is None else linha[c] for c in COLUNAS])
    return caminho


def gravar_xlsx(linhas: Sequence[Dict[str, object]], caminho: Path) -> Path:
    caminho.parent.mkdir(parents=True, exist_ok=True)
    wb = Workbook(write_only=True)
    ws = wb.create_sheet(title="Estatisticas")
    ws.append(COLUNAS)
    for linha in linhas:
        ws.append([linha[c] for c in COLUNAS])
    wb.save(str(caminho))
    return caminho


def gerar_estatisticas(caminhos: Sequence[Path], prefixo: Path) -> Dict[str, Path]:
    relatorios = carregar_relatorios(caminhos)
    agregado = agregar(relatorios)
    prefixo = Path(prefixo)
    saidas = {
        "csv": gravar_csv(agregado.linhas, prefixo.with_suffix(".csv")),
        "xlsx": gravar_xlsx(agregado.linhas, prefixo.with_suffix(".xlsx")),
    }
    grafico = prefixo.with_name(prefixo.name + "-grafico.json")
    grafico.parent.mkdir(parents=True, exist_ok=True)
    grafico.write_text(para_json(agregado.dados_grafico(), indent=2), encoding="utf-8")
    saidas["grafico"] = grafico
    log(f"📄 Estatisticas de {len(relatorios)} relatorio(s) gravadas em {prefixo.parent}")
    return saidas
