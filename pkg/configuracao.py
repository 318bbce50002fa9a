#!/usr/bin/env python3
"""
Configuracao compartilhada pelos modulos de ciclos apertados.

Resumo do fluxo:
1. Le arquivos `.env` / `ciclos.env` proximos ao executavel, ao script ou ao
   diretorio corrente (sem sobrescrever variaveis ja definidas).
2. Expoe os limites de escala de mesa (guardas do oraculo, orcamentos, tentativas).
3. Centraliza a divisao de sementes: toda aleatoriedade nasce de uma semente de 64 bits.

Dependencias:
    python >= 3.9
    tzdata (fuso horario do carimbo `gerado_em` em sistemas sem base de fusos)
"""

from __future__ import annotations

import datetime
import hashlib
import os
import random
import sys
from pathlib import Path
from typing import List, Optional

try:
    from zoneinfo import ZoneInfo, ZoneInfoNotFoundError
except ImportError:
    ZoneInfo = None
    ZoneInfoNotFoundError = None

# ==============================
# CONFIGURAÇÕES - ALTERE AQUI 👇
# ==============================

# Semente usada quando nenhuma e informada (CLI ou CICLOS_SEMENTE)
SEMENTE_PADRAO = 20240601

# Limite de nos visitados por busca de ciclo apertado
ORCAMENTO_NOS_PADRAO = 2_000_000

# Tentativas aleatorias antes de declarar falha de um passo randomizado
TENTATIVAS_ALEATORIAS = 100

# Ate este n a equalizacao do emparelhamento ancorado tenta todas as combinacoes
LIMITE_EXAUSTIVO_EQUALIZACAO = 12

# Verificacao do ciclo triangular: exaustiva ate t, amostrada acima
LIMITE_TRIANGULO_EXAUSTIVO = 12
AMOSTRAS_TRIANGULO = 1000

# Guardas rigidas dos oraculos de forca bruta
LIMITE_ORACULO_PARTICAO = 10
LIMITE_ORACULO_ARCO_IRIS_VERTICES = 12
LIMITE_ORACULO_ARCO_IRIS_CORES = 6
LIMITE_ENUMERACAO = 10

# Fuso do carimbo de data dos relatorios
FUSO_PADRAO = "America/Sao_Paulo"

ENV_KEYS = ("CICLOS_SEMENTE", "CICLOS_ORCAMENTO_NOS", "CICLOS_FUSO", "CICLOS_SAIDA")


def carregar_env() -> None:
    """
    Preenche as variaveis CICLOS_* lendo arquivos .env proximos ao script
    (ou ao executavel empacotado). Variaveis ja presentes no ambiente vencem.
    """
    candidatos: List[Path] = []
    if getattr(sys, "frozen", False):
        candidatos.append(Path(sys.executable).resolve().parent)

    try:
        script_dir = Path(__file__).resolve().parent
        candidatos.append(script_dir)
    except NameError:
        pass

    candidatos.append(Path.cwd())

    arquivos = [".env", "ciclos.env"]
    visitados = set()

    for base in candidatos:
        for nome in arquivos:
            caminho = (base / nome).resolve()
            if caminho in visitados or not caminho.is_file():
                continue
            visitados.add(caminho)

            try:
                linhas = caminho.read_text(encoding="utf-8").splitlines()
            except OSError:
                continue

            for linha in linhas:
                conteudo = linha.strip()
                if not conteudo or conteudo.startswith("#") or "=" not in conteudo:
                    continue
                chave, valor = conteudo.split("=", 1)
                chave = chave.replace("export", "", 1).strip()
                valor = valor.strip().strip('"').strip("'")
                if chave in ENV_KEYS and not os.getenv(chave):
                    os.environ[chave] = valor


carregar_env()

# ==============================
# FIM DAS CONFIGURAÇÕES
# ==============================


def _inteiro_env(chave: str, padrao: int) -> int:
    bruto = os.getenv(chave)
    if not bruto:
        return padrao
    try:
        return int(bruto.replace("_", ""))
    except ValueError:
        sys.stderr.write(f"[AVISO] {chave}={bruto!r} invalido; usando {padrao}.\n")
        return padrao


def semente_padrao() -> int:
    return _inteiro_env("CICLOS_SEMENTE", SEMENTE_PADRAO)


def orcamento_padrao() -> int:
    return _inteiro_env("CICLOS_ORCAMENTO_NOS", ORCAMENTO_NOS_PADRAO)


def saida_padrao() -> Optional[str]:
    return os.getenv("CICLOS_SAIDA") or None


def obter_fuso() -> datetime.tzinfo:
    """
    Retorna o fuso configurado mesmo quando o tzdata nao esta disponivel
    (ex.: Windows sem pacote tzdata instalado). Fallback estavel para UTC-03.
    """
    fallback = datetime.timezone(datetime.timedelta(hours=-3))
    if not ZoneInfo:
        return fallback
    try:
        return ZoneInfo(os.getenv("CICLOS_FUSO") or FUSO_PADRAO)
    except (ZoneInfoNotFoundError, OSError, KeyError, ValueError):
        return fallback


def agora_iso() -> str:
    return datetime.datetime.now(obter_fuso()).isoformat(timespec="seconds")


def derivar_semente(semente: int, *rotulos: object) -> int:
    """Divisao fixa: mesma semente e mesmos rotulos geram sempre o mesmo inteiro de 64 bits."""
    h = hashlib.blake2b(digest_size=8)
    h.update(str(int(semente)).encode("ascii"))
    for rotulo in rotulos:
        h.update(b"\x1f")
        h.update(str(rotulo).encode("utf-8"))
    return int.from_bytes(h.digest(), "big")


def rng_para(semente: int, *rotulos: object) -> random.Random:
    return random.Random(derivar_semente(semente, *rotulos))
