#!/usr/bin/env python3
"""
Front-end de lote para as construcoes de ciclos apertados.

Resumo do fluxo:
- gen: gera instancias no formato de intercambio (HGRAPH / MGRAPH) e, quando o gerador
  produz um artefato extra (ciclo triangular, pares que respeitam), grava o JSON ao lado.
  `--count N` gera N instancias com sementes derivadas, em paralelo.
- run: executa um pipeline (cover, rainbow-system, dense-matching, blowup, oracle-compare)
  sobre arquivos ou especificacoes de gerador (`--gen tipo:k=3,n=8,r=2`). Os logs de etapa
  saem como linhas JSON; o relatorio final traz todos os veredictos dos verificadores.
- stats: agrega relatorios em CSV, XLSX e dados de grafico (ver `estatisticas.py`).
- verify: reverifica qualquer certificado, testemunha ou relatorio serializado.

Codigos de saida: 0 sucesso, 1 verificador reprovado (ou passo sem objetos na escala dada),
2 erro de uso / entrada, 3 orcamento de nos esgotado.

Dependencias:
    openpyxl (via estatisticas), networkx (via emparelhamentos_densos), tzdata

Uso esperado:
    python3 ciclos_cli.py gen lower-bound --k 3 --r 2 --out instancias/lb.txt
    python3 ciclos_cli.py run cover instancias/lb.txt --epsilon 0.25 --out relatorios/
    python3 ciclos_cli.py run oracle-compare --gen lower-bound:k=2,r=3 --format text
    python3 ciclos_cli.py stats relatorios/*.json --out relatorios/estatisticas
    python3 ciclos_cli.py verify relatorios/cover-lb.json
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from absorcao_arco_iris import CycleSystem, rainbow_cycle_system, verify_rainbow_cycle_system
from ciclos_apertados import (
    CoverReport,
    TriangleCycle,
    build_triangle_cycle,
    check_cover_report,
    check_partition,
    cover_as_partition,
    greedy_mono_cover,
    lower_bound_instance,
    theorem_bound_report,
    verify_triangle_cycle,
)
from configuracao import (
    LIMITE_ORACULO_ARCO_IRIS_CORES,
    LIMITE_ORACULO_ARCO_IRIS_VERTICES,
    agora_iso,
    derivar_semente,
    orcamento_padrao,
    saida_padrao,
    semente_padrao,
)
from emparelhamentos_densos import DenseMatchingCertificate, find_semi_dense, semi_to_half, verify_dense_matching
from estatisticas import ESQUEMA_RELATORIO, gerar_estatisticas
from falhas import BudgetExhausted, InputError, InvariantViolation, StepFailure
from modelo_hipergrafo import (
    ColouredKGraph,
    EdgeColouredMultigraph,
    Instance,
    TightCycle,
    Verdict,
    degree_profile,
    instance_from_dict,
    random_coloured_kgraph,
    random_multigraph,
    read_instance,
    write_instance,
)
from oraculo import min_mono_partition, min_rainbow_cycle_system
from registro import log, para_json
from transferencia_blowup import (
    KPartiteGraph,
    RespectsWitness,
    clean_to_robust_subgraph,
    count_k2_blowups,
    permutation_slice,
    respecting_pairs,
    verify_respects,
)

PIPELINES = ("cover", "rainbow-system", "dense-matching", "blowup", "oracle-compare")
GERADORES = ("random-colouring", "random-multigraph", "lower-bound", "triangle-cycle", "respecting-pair")

SAIDA_OK = 0
SAIDA_REPROVADO = 1
SAIDA_ENTRADA = 2
SAIDA_ORCAMENTO = 3

WORKERS_PADRAO = 4


@dataclass
class RunConfig:
    """Tudo que determina uma execucao; vai inteiro no relatorio para permitir replay."""

    subcommand: str
    pipeline: Optional[str] = None
    source: Optional[str] = None
    seed: int = 0
    budget_nodes: int = 0
    out: Optional[str] = None
    format: str = "json"
    params: Dict[str, object] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, object]:
        return asdict(self)


# --------------------------------------------------------------------------------------
# Geradores
# --------------------------------------------------------------------------------------


@dataclass
class InstanciaGerada:
    tipo: str
    instancia: Instance
    artefato: Optional[Dict[str, object]] = None


def _inteiro(params: Mapping[str, object], chave: str, minimo: int = 1, padrao: Optional[int] = None) -> int:
    bruto = params.get(chave, padrao)
    if bruto is None:
        raise InputError(f"Parametro obrigatorio ausente: {chave}")
    try:
        valor = int(bruto)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{chave} deve ser inteiro (recebido {bruto!r}).") from exc
    if valor < minimo:
        raise InputError(f"{chave} deve ser >= {minimo} (recebido {valor}).")
    return valor


def _real(params: Mapping[str, object], chave: str, padrao: float) -> float:
    bruto = params.get(chave, padrao)
    try:
        return float(Fraction(str(bruto)))
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{chave} deve ser numerico (recebido {bruto!r}).") from exc


def _lista_inteiros(bruto: object) -> List[int]:
    try:
        return [int(p) for p in re.split(r"[,/ ]+", str(bruto).strip()) if p]
    except ValueError as exc:
        raise InputError(f"Lista de inteiros invalida: {bruto!r}") from exc


def interpretar_gerador(texto: str) -> Tuple[str, Dict[str, str]]:
    """`tipo:chave=valor,...` (listas usam `/`, ex.: `lower-bound:k=3,r=2,sizes=1/3`)."""
    tipo, _, resto = texto.partition(":")
    tipo = tipo.strip()
    if tipo not in GERADORES:
        raise InputError(f"Gerador desconhecido: {tipo!r}. Opcoes: {', '.join(GERADORES)}")
    params: Dict[str, str] = {}
    for par in filter(None, (p.strip() for p in resto.split(","))):
        chave, sep, valor = par.partition("=")
        if not sep:
            raise InputError(f"Parametro sem '=' na especificacao do gerador: {par!r}")
        params[chave.strip()] = valor.strip()
    return tipo, params


def gerar_instancia(tipo: str, params: Mapping[str, object], semente: int) -> InstanciaGerada:
    if tipo == "random-colouring":
        H = random_coloured_kgraph(
            _inteiro(params, "k", 2),
            _inteiro(params, "n"),
            _inteiro(params, "r"),
            semente,
            _real(params, "density", 1.0),
        )
        return InstanciaGerada(tipo, H)
    if tipo == "random-multigraph":
        G = random_multigraph(_inteiro(params, "n"), _inteiro(params, "colours"), _real(params, "p", 0.5), semente)
        return InstanciaGerada(tipo, G)
    if tipo == "lower-bound":
        tamanhos = _lista_inteiros(params["sizes"]) if params.get("sizes") else None
        return InstanciaGerada(tipo, lower_bound_instance(_inteiro(params, "k", 2), _inteiro(params, "r"), tamanhos))
    if tipo == "triangle-cycle":
        T = build_triangle_cycle(_inteiro(params, "k", 3), _inteiro(params, "t", 2))
        return InstanciaGerada(tipo, T.graph, {"tipo": "TRIANGLE", "k": T.k, "t": T.t, "graph": T.graph.to_dict()})
    if tipo == "respecting-pair":
        k, n, r = _inteiro(params, "k", 2), _inteiro(params, "n"), _inteiro(params, "r")
        H = random_coloured_kgraph(k, k * n, r, derivar_semente(semente, "hospedeiro"))
        X = list(range((k - 1) * n))
        Z = list(range((k - 1) * n, k * n))
        pares = respecting_pairs(H, X, Z, semente=semente)
        return InstanciaGerada(tipo, H, {"tipo": "RespectingPairs", **pares.to_dict()})
    raise InputError(f"Gerador desconhecido: {tipo!r}")


def resumo_instancia(instancia: Instance) -> Dict[str, object]:
    if isinstance(instancia, ColouredKGraph):
        return {"tipo": "HGRAPH", "k": instancia.k, "n": instancia.n, "r": instancia.r, "edges": len(instancia)}
    perfil = degree_profile(instancia)
    return {
        "tipo": "MGRAPH",
        "n": instancia.n,
        "colours": len(instancia.colours),
        "edges": len(instancia.edges),
        "delta_mon": perfil.delta_mon,
    }


def carregar_fonte(fonte: str, semente: int) -> Instance:
    caminho = Path(fonte)
    if caminho.is_file():
        return read_instance(caminho)
    if ":" in fonte or fonte in GERADORES:
        tipo, params = interpretar_gerador(fonte)
        return gerar_instancia(tipo, params, semente).instancia
    raise InputError(f"Arquivo nao encontrado: {fonte}")


# --------------------------------------------------------------------------------------
# Pipelines
# --------------------------------------------------------------------------------------


@dataclass
class ResultadoPipeline:
    result: Dict[str, object]
    verdicts: Dict[str, Verdict] = field(default_factory=dict)
    status: str = "ok"  # ok | reprovado | orcamento | falha_de_etapa


def _exigir_hgraph(instancia: Instance, pipeline: str) -> ColouredKGraph:
    if not isinstance(instancia, ColouredKGraph):
        raise InputError(f"O pipeline {pipeline} espera uma instancia HGRAPH.")
    return instancia


def _exigir_mgraph(instancia: Instance, pipeline: str) -> EdgeColouredMultigraph:
    if not isinstance(instancia, EdgeColouredMultigraph):
        raise InputError(f"O pipeline {pipeline} espera uma instancia MGRAPH.")
    return instancia


def _fracao_param(cfg: RunConfig, chave: str) -> Fraction:
    try:
        return Fraction(str(cfg.params[chave]))
    except (KeyError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"Parametro {chave} invalido: {cfg.params.get(chave)!r}") from exc


def pipeline_cover(instancia: Instance, cfg: RunConfig) -> ResultadoPipeline:
    H = _exigir_hgraph(instancia, "cover")
    relatorio = greedy_mono_cover(H, float(_fracao_param(cfg, "epsilon")), cfg.budget_nodes)
    particao = cover_as_partition(H, relatorio)
    resultado = relatorio.to_dict()
    resultado["partition_size"] = len(particao)
    if H.k >= 3:
        resultado["theorem_bound"] = theorem_bound_report(H.k, H.r)
    return ResultadoPipeline(
        resultado,
        {"cover": check_cover_report(H, relatorio), "partition": check_partition(H, particao)},
        "orcamento" if relatorio.inconclusive else "ok",
    )


def pipeline_rainbow_system(instancia: Instance, cfg: RunConfig) -> ResultadoPipeline:
    G = _exigir_mgraph(instancia, "rainbow-system")
    sistema = rainbow_cycle_system(
        G,
        _fracao_param(cfg, "delta0"),
        budget=cfg.budget_nodes,
        force_absorption=bool(cfg.params.get("force_absorption")),
    )
    veredictos = {"system": verify_rainbow_cycle_system(G, sistema)}
    resultado = sistema.to_dict()
    if G.n <= LIMITE_ORACULO_ARCO_IRIS_VERTICES and len(G.colours) <= LIMITE_ORACULO_ARCO_IRIS_CORES:
        oraculo = min_rainbow_cycle_system(G)
        resultado["oracle"] = oraculo.count
        veredictos["oracle_sandwich"] = Verdict(
            oraculo.count is not None and oraculo.count <= sistema.count,
            (oraculo.count, sistema.count),
            "" if oraculo.count is not None and oraculo.count <= sistema.count else "oraculo acima do pipeline",
        )
    return ResultadoPipeline(resultado, veredictos)


def pipeline_dense_matching(instancia: Instance, cfg: RunConfig) -> ResultadoPipeline:
    H = _exigir_hgraph(instancia, "dense-matching")
    semente = derivar_semente(cfg.seed, "denso")
    cert = find_semi_dense(H, _fracao_param(cfg, "dense_epsilon"), semente)
    veredictos = {"semi": verify_dense_matching(H, cert)}
    resultado = cert.to_dict()
    if cfg.params.get("half"):
        meio = semi_to_half(H, cert, Fraction(cert.threshold, H.n), semente)
        veredictos["half"] = verify_dense_matching(H, meio)
        resultado["half"] = meio.to_dict()
    return ResultadoPipeline(resultado, veredictos)


def classes_iguais(n: int, k: int) -> List[List[int]]:
    m = n // k
    if m < 2:
        raise InputError(f"Classes de tamanho {m} < 2: o blowup exige n >= 2k (n={n}, k={k}).")
    return [list(range(i * m, (i + 1) * m)) for i in range(k)]


def pipeline_blowup(instancia: Instance, cfg: RunConfig) -> ResultadoPipeline:
    H = _exigir_hgraph(instancia, "blowup")
    classes = classes_iguais(H.n, H.k)
    Hk = KPartiteGraph.from_kgraph(H, classes, colour=cfg.params.get("colour"))
    contagem = count_k2_blowups(Hk)
    fatia = permutation_slice(Hk, semente=derivar_semente(cfg.seed, "fatia"), amostras=int(cfg.params.get("samples", 0)))
    resultado: Dict[str, object] = {
        "classes": classes,
        "edges": len(Hk),
        "count": contagem.to_dict(),
        "slice": fatia.to_dict(),
    }
    if cfg.params.get("gamma") is not None:
        limpeza = clean_to_robust_subgraph(Hk, _fracao_param(cfg, "gamma"), derivar_semente(cfg.seed, "limpeza"))
        resultado["cleaning"] = limpeza.to_dict()
    dentro = fatia.within()
    veredictos = {
        "cs_bound": Verdict(contagem.meets_bound, contagem.ordered, "" if contagem.meets_bound else "abaixo da cota"),
        "moments": Verdict(all(contagem.moment_checks), contagem.moment_checks),
        "slice_mean": Verdict(
            dentro is not False,
            fatia.mean,
            "" if dentro is not False else "media fora de 3 erros-padrao",
            {"expectation": fatia.expectation, "samples": len(fatia.samples)},
        ),
    }
    return ResultadoPipeline(resultado, veredictos)


def pipeline_oracle_compare(instancia: Instance, cfg: RunConfig) -> ResultadoPipeline:
    H = _exigir_hgraph(instancia, "oracle-compare")
    oraculo = min_mono_partition(H)
    relatorio = greedy_mono_cover(H, float(_fracao_param(cfg, "epsilon")), cfg.budget_nodes)
    particao = cover_as_partition(H, relatorio)
    sanduiche = oraculo.count is not None and oraculo.count <= len(particao)
    resultado = {
        "oracle": oraculo.count,
        "construction_r": H.r,
        "matches_construction": oraculo.count == H.r,
        "pipeline_count": len(particao),
        "oracle_partition": [c.to_dict() for c in oraculo.partition],
        "pipeline_partition": [c.to_dict() for c in particao],
        "oracle_nodes": oraculo.nodes,
    }
    veredictos = {
        "oracle_partition": check_partition(H, oraculo.partition),
        "pipeline_partition": check_partition(H, particao),
        "sandwich": Verdict(sanduiche, (oraculo.count, len(particao)), "" if sanduiche else "oraculo acima do pipeline"),
    }
    return ResultadoPipeline(resultado, veredictos, "orcamento" if relatorio.inconclusive else "ok")


PIPELINE_FUNCS: Dict[str, Callable[[Instance, RunConfig], ResultadoPipeline]] = {
    "cover": pipeline_cover,
    "rainbow-system": pipeline_rainbow_system,
    "dense-matching": pipeline_dense_matching,
    "blowup": pipeline_blowup,
    "oracle-compare": pipeline_oracle_compare,
}


def executar(cfg: RunConfig) -> Dict[str, object]:
    """Roda um pipeline sobre uma fonte e monta o relatorio (InputError sobe ao chamador)."""
    instancia = carregar_fonte(str(cfg.source), cfg.seed)
    try:
        saida = PIPELINE_FUNCS[str(cfg.pipeline)](instancia, cfg)
    except BudgetExhausted as exc:
        saida = ResultadoPipeline({"nodes": exc.nodes, "error": str(exc)}, status="orcamento")
    except StepFailure as exc:
        saida = ResultadoPipeline({"failure": exc.to_dict()}, status="falha_de_etapa")
    except InvariantViolation as exc:
        saida = ResultadoPipeline({"invariant": str(exc), "state": exc.estado}, status="reprovado")

    reprovados = sorted(nome for nome, v in saida.verdicts.items() if not v.ok)
    if saida.status == "ok" and reprovados:
        saida.status = "reprovado"
    relatorio = {
        "schema": ESQUEMA_RELATORIO,
        "pipeline": cfg.pipeline,
        "config": cfg.to_dict(),
        "instance": {**resumo_instancia(instancia), "source": cfg.source, "data": instancia.to_dict()},
        "result": saida.result,
        "verdicts": {nome: v.to_dict() for nome, v in sorted(saida.verdicts.items())},
        "failing": reprovados,
        "status": saida.status,
        "ok": saida.status == "ok",
        "gerado_em": agora_iso(),
    }
    return relatorio


def codigo_de_saida(relatorios: Sequence[Mapping[str, object]]) -> int:
    if any(r.get("status") == "orcamento" for r in relatorios):
        return SAIDA_ORCAMENTO
    if any(not r.get("ok") for r in relatorios):
        return SAIDA_REPROVADO
    return SAIDA_OK


def _nome_seguro(fonte: str) -> str:
    caminho = Path(fonte)
    base = caminho.stem if caminho.suffix else fonte
    return re.sub(r"[^A-Za-z0-9_.-]+", "-", base).strip("-") or "instancia"


def destino_relatorio(out: Optional[str], pipeline: str, fonte: str, unico: bool) -> Optional[Path]:
    if not out:
        return None
    alvo = Path(out)
    if unico and alvo.suffix == ".json":
        return alvo
    return alvo / f"{pipeline}-{_nome_seguro(fonte)}.json"


def _resumo_texto(relatorio: Mapping[str, object]) -> str:
    resultado = relatorio.get("result") or {}
    pipeline = relatorio.get("pipeline")
    if relatorio.get("status") == "falha_de_etapa":
        return f"falha de etapa: {resultado['failure']['erro']}"
    if relatorio.get("status") == "orcamento" and pipeline not in ("cover", "oracle-compare"):
        return "orcamento de nos esgotado"
    if pipeline == "cover":
        return f"{len(resultado.get('cycles', []))} ciclo(s), sobra {len(resultado.get('leftover', []))}"
    if pipeline == "rainbow-system":
        return f"ramo {resultado.get('branch')}, {resultado.get('count')} componente(s)"
    if pipeline == "dense-matching":
        return f"emparelhamento de {len(resultado.get('matching', []))} aresta(s), limiar {resultado.get('threshold')}"
    if pipeline == "blowup":
        return f"{(resultado.get('count') or {}).get('count')} copia(s) de K(2)"
    if pipeline == "oracle-compare":
        return (
            f"r da construcao={resultado.get('construction_r')}, minimo do oraculo={resultado.get('oracle')}, "
            f"pipeline={resultado.get('pipeline_count')}"
        )
    return ""


def _imprimir_relatorio(relatorio: Mapping[str, object], formato: str) -> None:
    if formato == "json":
        log(para_json(relatorio, sort_keys=True))
        return
    fonte = relatorio["config"]["source"]
    if relatorio.get("ok"):
        log(f"[OK] {relatorio['pipeline']} {fonte}: {_resumo_texto(relatorio)}")
        return
    reprovados = ", ".join(relatorio.get("failing") or []) or relatorio.get("status")
    sys.stderr.write(f"[ERRO] {relatorio['pipeline']} {fonte}: {reprovados} ({_resumo_texto(relatorio)})\n")


# --------------------------------------------------------------------------------------
# Subcomandos
# --------------------------------------------------------------------------------------


def _params_run(args: argparse.Namespace) -> Dict[str, object]:
    return {
        "epsilon": args.epsilon,
        "dense_epsilon": args.dense_epsilon,
        "delta0": args.delta0,
        "half": args.half,
        "samples": args.samples,
        "gamma": args.gamma,
        "colour": args.colour,
        "force_absorption": args.force_absorption,
    }


def cmd_run(args: argparse.Namespace) -> int:
    fontes = list(args.instances) + list(args.gen or [])
    if not fontes:
        raise InputError("Informe ao menos uma instancia (arquivo ou --gen).")
    out = args.out or saida_padrao()
    configs = [
        RunConfig("run", args.pipeline, fonte, args.seed, args.budget_nodes, out, args.format, _params_run(args))
        for fonte in fontes
    ]

    relatorios: List[Optional[Dict[str, object]]] = [None] * len(configs)
    limite = max(1, min(len(configs), args.workers))
    with ThreadPoolExecutor(max_workers=limite) as executor:
        tarefas = {executor.submit(executar, cfg): indice for indice, cfg in enumerate(configs)}
        for futuro in as_completed(tarefas):
            relatorios[tarefas[futuro]] = futuro.result()

    for cfg, relatorio in zip(configs, relatorios):
        destino = destino_relatorio(out, str(cfg.pipeline), str(cfg.source), len(configs) == 1)
        if destino is not None:
            destino.parent.mkdir(parents=True, exist_ok=True)
            destino.write_text(para_json(relatorio, indent=2, sort_keys=True) + "\n", encoding="utf-8")
            relatorio_caminho = str(destino)
        else:
            relatorio_caminho = None
        _imprimir_relatorio(relatorio, args.format)
        if relatorio_caminho and args.format == "text":
            log(f"   📄 {relatorio_caminho}")
    return codigo_de_saida([r for r in relatorios if r is not None])


def _params_gen(args: argparse.Namespace) -> Dict[str, object]:
    chaves = ("k", "n", "r", "t", "density", "colours", "p", "sizes")
    return {chave: getattr(args, chave) for chave in chaves if getattr(args, chave) is not None}


def _destino_instancia(base: Path, indice: int, total: int) -> Path:
    if total == 1:
        return base
    return base.with_name(f"{base.stem}-{indice:03d}{base.suffix or '.txt'}")


def _gerar_e_gravar(tipo: str, params: Mapping[str, object], semente: int, destino: Path) -> Dict[str, object]:
    gerada = gerar_instancia(tipo, params, semente)
    write_instance(gerada.instancia, destino)
    resumo = {**resumo_instancia(gerada.instancia), "arquivo": str(destino), "seed": semente}
    if gerada.artefato is not None:
        artefato = destino.with_suffix(".json")
        artefato.write_text(para_json(gerada.artefato, indent=2, sort_keys=True) + "\n", encoding="utf-8")
        resumo["artefato"] = str(artefato)
    return resumo


def cmd_gen(args: argparse.Namespace) -> int:
    if args.count < 1:
        raise InputError("--count deve ser >= 1.")
    params = _params_gen(args)
    base = Path(args.out) if args.out else Path(saida_padrao() or "instancias") / f"{args.tipo}.txt"
    sementes = [args.seed] if args.count == 1 else [derivar_semente(args.seed, args.tipo, i) for i in range(args.count)]

    resumos: List[Optional[Dict[str, object]]] = [None] * args.count
    limite = max(1, min(args.count, args.workers))
    with ThreadPoolExecutor(max_workers=limite) as executor:
        tarefas = {
            executor.submit(_gerar_e_gravar, args.tipo, params, semente, _destino_instancia(base, i, args.count)): i
            for i, semente in enumerate(sementes)
        }
        for futuro in as_completed(tarefas):
            resumos[tarefas[futuro]] = futuro.result()

    for resumo in resumos:
        if args.format == "json":
            log(para_json(resumo, sort_keys=True))
        else:
            detalhes = ", ".join(f"{c}={resumo[c]}" for c in ("k", "n", "r", "colours", "edges") if c in resumo)
            log(f"[OK] Instancia gravada em {resumo['arquivo']} ({detalhes})")
    return SAIDA_OK


def cmd_stats(args: argparse.Namespace) -> int:
    prefixo = Path(args.out) if args.out else Path(saida_padrao() or ".") / "estatisticas"
    saidas = gerar_estatisticas([Path(p) for p in args.reports], prefixo)
    if args.format == "json":
        log(para_json({chave: str(caminho) for chave, caminho in saidas.items()}, sort_keys=True))
    else:
        log("[OK] Estatisticas geradas.")
        for chave, caminho in saidas.items():
            log(f"   {chave}: {caminho}")
    return SAIDA_OK


# --------------------------------------------------------------------------------------
# Reverificacao
# --------------------------------------------------------------------------------------


def _carregar_json(caminho: Path) -> Dict[str, object]:
    try:
        dados = json.loads(caminho.read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise InputError(f"Arquivo nao encontrado: {caminho}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{caminho}: JSON invalido ({exc.msg}, linha {exc.lineno})") from exc
    if not isinstance(dados, dict):
        raise InputError(f"{caminho}: artefato deve ser um objeto JSON.")
    return dados


def _primeiro_reprovado(veredictos: Sequence[Tuple[str, Verdict]]) -> Verdict:
    for nome, veredito in veredictos:
        if not veredito.ok:
            return Verdict(False, veredito.witness, f"{nome}: {veredito.detail}", veredito.extras)
    return Verdict(True, extras={"checks": [nome for nome, _ in veredictos]})


def reverificar_relatorio(dados: Mapping[str, object]) -> Verdict:
    if dados.get("status") != "ok":
        return Verdict(False, dados.get("status"), "relatorio registra execucao sem resultado verificavel")
    try:
        instancia = instance_from_dict(dados["instance"]["data"])
        resultado = dados["result"]
        pipeline = dados["pipeline"]
    except (KeyError, TypeError) as exc:
        raise InputError(f"Relatorio incompleto: {exc}") from exc

    if pipeline == "cover":
        H = _exigir_hgraph(instancia, pipeline)
        relatorio = CoverReport(
            H.n,
            H.k,
            H.r,
            float(resultado["epsilon"]),
            [TightCycle.from_dict(c) for c in resultado["cycles"]],
            [int(v) for v in resultado["leftover"]],
        )
        return _primeiro_reprovado([("cover", check_cover_report(H, relatorio))])
    if pipeline == "rainbow-system":
        G = _exigir_mgraph(instancia, pipeline)
        return _primeiro_reprovado([("system", verify_rainbow_cycle_system(G, CycleSystem.from_dict(resultado)))])
    if pipeline == "dense-matching":
        H = _exigir_hgraph(instancia, pipeline)
        checagens = [("semi", verify_dense_matching(H, DenseMatchingCertificate.from_dict(resultado)))]
        if "half" in resultado:
            checagens.append(("half", verify_dense_matching(H, DenseMatchingCertificate.from_dict(resultado["half"]))))
        return _primeiro_reprovado(checagens)
    if pipeline == "blowup":
        H = _exigir_hgraph(instancia, pipeline)
        Hk = KPartiteGraph.from_kgraph(H, resultado["classes"], colour=(dados["config"]["params"] or {}).get("colour"))
        recontagem = count_k2_blowups(Hk, moments=False).count
        declarada = resultado["count"]["count"]
        return _primeiro_reprovado(
            [("count", Verdict(recontagem == declarada, (recontagem, declarada), "" if recontagem == declarada else "recontagem difere"))]
        )
    if pipeline == "oracle-compare":
        H = _exigir_hgraph(instancia, pipeline)
        oraculo = [TightCycle.from_dict(c) for c in resultado["oracle_partition"]]
        pipeline_partes = [TightCycle.from_dict(c) for c in resultado["pipeline_partition"]]
        contagem_ok = len(oraculo) == resultado["oracle"] and len(oraculo) <= len(pipeline_partes)
        return _primeiro_reprovado(
            [
                ("oracle_partition", check_partition(H, oraculo)),
                ("pipeline_partition", check_partition(H, pipeline_partes)),
                ("sandwich", Verdict(contagem_ok, (resultado["oracle"], len(pipeline_partes)), "" if contagem_ok else "contagens incoerentes")),
            ]
        )
    raise InputError(f"Pipeline desconhecido no relatorio: {pipeline!r}")


def _instancia_auxiliar(caminho: Optional[str], tipo: str) -> Instance:
    if not caminho:
        raise InputError(f"Artefato {tipo} exige --instance com o grafo hospedeiro.")
    return read_instance(caminho)


def reverificar(dados: Mapping[str, object], instancia_aux: Optional[str] = None) -> Verdict:
    """Despacha pelo campo `schema` (relatorios) ou `tipo` (certificados e testemunhas)."""
    if dados.get("schema") == ESQUEMA_RELATORIO:
        return reverificar_relatorio(dados)
    tipo = dados.get("tipo")
    if tipo == "RespectsWitness":
        return verify_respects(RespectsWitness.from_dict(dados))
    if tipo == "RespectingPairs":
        checagens = [
            (f"respects[{j}]", verify_respects(RespectsWitness.from_dict(w)))
            for j, w in sorted((dados.get("witnesses") or {}).items())
        ]
        for nome, ok in sorted((dados.get("checks") or {}).items()):
            checagens.append((nome, Verdict(bool(ok), nome)))
        return _primeiro_reprovado(checagens)
    if tipo == "TRIANGLE":
        try:
            T = TriangleCycle(int(dados["k"]), int(dados["t"]), ColouredKGraph.from_dict(dados["graph"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"Artefato TRIANGLE invalido: {exc}") from exc
        return verify_triangle_cycle(T)
    if tipo == "DenseMatchingCertificate":
        H = _exigir_hgraph(_instancia_auxiliar(instancia_aux, tipo), "verify")
        return verify_dense_matching(H, DenseMatchingCertificate.from_dict(dados))
    if "cycles" in dados and "degenerate_edges" in dados:
        G = _exigir_mgraph(_instancia_auxiliar(instancia_aux, "CycleSystem"), "verify")
        return verify_rainbow_cycle_system(G, CycleSystem.from_dict(dados))
    raise InputError(f"Tipo de artefato desconhecido: {tipo!r}")


def cmd_verify(args: argparse.Namespace) -> int:
    codigo = SAIDA_OK
    for bruto in args.artifacts:
        caminho = Path(bruto)
        veredito = reverificar(_carregar_json(caminho), args.instance)
        if args.format == "json":
            log(para_json({"arquivo": str(caminho), **veredito.to_dict()}, sort_keys=True))
        elif veredito.ok:
            log(f"[OK] {caminho}: verificado.")
        else:
            sys.stderr.write(f"[ERRO] {caminho}: {veredito.detail} (testemunha: {veredito.witness})\n")
        if not veredito.ok:
            codigo = SAIDA_REPROVADO
    return codigo


# --------------------------------------------------------------------------------------
# Argumentos
# --------------------------------------------------------------------------------------


def parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    comuns = argparse.ArgumentParser(add_help=False)
    comuns.add_argument("--seed", type=int, default=semente_padrao(), help="Semente de 64 bits (CICLOS_SEMENTE).")
    comuns.add_argument(
        "--budget-nodes",
        dest="budget_nodes",
        type=int,
        default=orcamento_padrao(),
        help="Limite de nos por busca de ciclo apertado (CICLOS_ORCAMENTO_NOS).",
    )
    comuns.add_argument("--out", help="Arquivo ou diretorio de saida (CICLOS_SAIDA).")
    comuns.add_argument("--format", choices=("json", "text"), default="json", help="Formato impresso no terminal.")
    comuns.add_argument("--workers", type=int, default=WORKERS_PADRAO, help="Threads para lotes.")

    parser = argparse.ArgumentParser(
        description="Gera instancias, executa pipelines de ciclos apertados e agrega relatorios.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    sub = parser.add_subparsers(dest="comando", required=True)

    gen = sub.add_parser("gen", parents=[comuns], formatter_class=argparse.ArgumentDefaultsHelpFormatter, help="Gera instancias.")
    gen.add_argument("tipo", choices=GERADORES, help="Gerador.")
    gen.add_argument("--k", type=int, help="Uniformidade.")
    gen.add_argument("--n", type=int, help="Numero de vertices (por classe em respecting-pair).")
    gen.add_argument("--r", type=int, help="Numero de cores.")
    gen.add_argument("--t", type=int, help="Numero de absorvedores do ciclo triangular.")
    gen.add_argument("--density", type=float, help="Probabilidade de cada k-conjunto virar aresta.")
    gen.add_argument("--colours", type=int, help="Cores do multigrafo aleatorio.")
    gen.add_argument("--p", type=float, help="Probabilidade por par e cor no multigrafo aleatorio.")
    gen.add_argument("--sizes", help="Tamanhos das classes da cota inferior (ex: 1,3).")
    gen.add_argument("--count", type=int, default=1, help="Quantidade de instancias (sementes derivadas).")

    run = sub.add_parser("run", parents=[comuns], formatter_class=argparse.ArgumentDefaultsHelpFormatter, help="Executa um pipeline.")
    run.add_argument("pipeline", choices=PIPELINES, help="Pipeline.")
    run.add_argument("instances", metavar="INSTANCIA", nargs="*", help="Arquivos HGRAPH/MGRAPH.")
    run.add_argument("--gen", action="append", metavar="ESPEC", help="Gerador no lugar de arquivo (tipo:k=3,n=8,r=2).")
    run.add_argument("--epsilon", default="1/4", help="ε da cobertura gulosa (cover, oracle-compare).")
    run.add_argument("--dense-epsilon", dest="dense_epsilon", default="1/2", help="ε do emparelhamento semi-denso.")
    run.add_argument("--half", action="store_true", help="Converte o emparelhamento semi-denso em meio-denso.")
    run.add_argument("--delta0", default="1/8", help="δ0 do sistema de ciclos arco-iris.")
    run.add_argument("--force-absorption", dest="force_absorption", action="store_true", help="Ignora o atalho do emparelhamento.")
    run.add_argument("--samples", type=int, default=200, help="Amostras da fatia por permutacao (blowup).")
    run.add_argument("--gamma", help="γ da limpeza para subgrafo robusto (blowup); omitido pula a limpeza.")
    run.add_argument("--colour", type=int, help="Restringe o blowup a uma cor.")

    stats = sub.add_parser("stats", parents=[comuns], formatter_class=argparse.ArgumentDefaultsHelpFormatter, help="Agrega relatorios.")
    stats.add_argument("reports", metavar="RELATORIO", nargs="*", help="Relatorios JSON de `run`.")

    verify = sub.add_parser("verify", parents=[comuns], formatter_class=argparse.ArgumentDefaultsHelpFormatter, help="Reverifica artefatos.")
    verify.add_argument("artifacts", metavar="ARQUIVO", nargs="+", help="Relatorio, certificado ou testemunha JSON.")
    verify.add_argument("--instance", help="Grafo hospedeiro para certificados que nao o embutem.")
    return parser.parse_args(argv)


COMANDOS: Dict[str, Callable[[argparse.Namespace], int]] = {
    "gen": cmd_gen,
    "run": cmd_run,
    "stats": cmd_stats,
    "verify": cmd_verify,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.workers < 1:
        sys.stderr.write("[ERRO] --workers deve ser >= 1.\n")
        return SAIDA_ENTRADA
    try:
        return COMANDOS[args.comando](args)
    except InputError as exc:
        sys.stderr.write(f"[ERRO] {exc}\n")
        return SAIDA_ENTRADA
    except BudgetExhausted as exc:
        sys.stderr.write(f"[ERRO] Orcamento de nos esgotado ({exc.nodes} nos).\n")
        return SAIDA_ORCAMENTO
    except InvariantViolation as exc:
        sys.stderr.write(f"[ERRO] Invariante violado: {exc}\n")
        return SAIDA_REPROVADO


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
