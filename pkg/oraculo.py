#!/usr/bin/env python3
"""
Oraculos de forca bruta: particao monocromatica minima, sistema arco-iris minimo
e enumeracao de ciclos apertados.

Todos recusam instancias acima das guardas de `configuracao` (SizeGuardError) em vez
de aproximar: os valores exatos daqui alimentam os testes dos demais modulos.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, FrozenSet, Iterator, List, Optional, Set, Tuple

from ciclos_apertados import NodeCounter, find_tight_cycle, iter_tight_cycles
from configuracao import (
    LIMITE_ENUMERACAO,
    LIMITE_ORACULO_ARCO_IRIS_CORES,
    LIMITE_ORACULO_ARCO_IRIS_VERTICES,
    LIMITE_ORACULO_PARTICAO,
)
from falhas import InputError, SizeGuardError, garantir
from modelo_hipergrafo import (
    Colour,
    ColouredKGraph,
    EdgeColouredMultigraph,
    MultiEdge,
    RainbowCycle,
    TightCycle,
    colour_key,
)

# --------------------------------------------------------------------------------------
# Particao monocromatica minima
# --------------------------------------------------------------------------------------


@dataclass
class PartitionOracleResult:
    count: Optional[int]
    partition: List[TightCycle] = field(default_factory=list)
    nodes: int = 0
    elapsed: float = 0.0

    def to_dict(self) -> Dict[str, object]:
        return {
            "count": self.count,
            "partition": [c.to_dict() for c in self.partition],
            "nodes": self.nodes,
            "elapsed_s": round(self.elapsed, 4),
        }


def min_mono_partition(H: ColouredKGraph, limit: Optional[int] = None) -> PartitionOracleResult:
    """
    Aprofundamento iterativo sobre o numero de ciclos.

    Completude: em qualquer particao, o menor vertice restante esta em exatamente uma
    parte; o ramo enumera todas as partes possiveis que o contem (todo subconjunto de
    ate k vertices como ciclo degenerado e todo subconjunto maior com ciclo apertado
    hamiltoniano monocromatico). Estados que falharam com a mesma profundidade
    restante sao memorizados pelo conjunto restante.
    """
    if H.n > LIMITE_ORACULO_PARTICAO:
        raise SizeGuardError(
            f"n={H.n} acima do limite {LIMITE_ORACULO_PARTICAO} do oraculo de particao; "
            "use greedy_mono_cover para instancias maiores."
        )
    inicio = time.perf_counter()
    teto = math.ceil(H.n / H.k)
    limite = teto if limit is None else min(limit, teto)
    contador = NodeCounter()
    ciclos_cache: Dict[FrozenSet[int], Optional[TightCycle]] = {}

    def ciclo_hamiltoniano(conjunto: FrozenSet[int]) -> Optional[TightCycle]:
        if conjunto not in ciclos_cache:
            achado = None
            for cor in range(H.r):
                resultado = find_tight_cycle(H, len(conjunto), cor, allowed=set(conjunto), counter=contador)
                if resultado.found:
                    achado = resultado.cycle
                    break
            ciclos_cache[conjunto] = achado
        return ciclos_cache[conjunto]

    falhas: Set[Tuple[FrozenSet[int], int]] = set()

    def busca(restantes: FrozenSet[int], profundidade: int) -> Optional[List[TightCycle]]:
        contador.tick()
        if not restantes:
            return []
        if profundidade == 0 or (restantes, profundidade) in falhas:
            return None
        v = min(restantes)
        outros = sorted(restantes - {v})
        for tamanho in range(len(outros), -1, -1):
            for resto in combinations(outros, tamanho):
                parte = frozenset((v, *resto))
                if len(parte) <= H.k:
                    ciclo = TightCycle(tuple(sorted(parte)), degenerate=True)
                else:
                    ciclo = ciclo_hamiltoniano(parte)
                    if ciclo is None:
                        continue
                sub = busca(restantes - parte, profundidade - 1)
                if sub is not None:
                    return [ciclo, *sub]
        falhas.add((restantes, profundidade))
        return None

    todos = frozenset(H.vertices)
    for profundidade in range(0, limite + 1):
        particao = busca(todos, profundidade)
        if particao is not None:
            garantir(len(particao) <= teto, "oraculo acima do teto ceil(n/k)", count=len(particao))
            return PartitionOracleResult(len(particao), particao, contador.nodes, time.perf_counter() - inicio)
    return PartitionOracleResult(None, [], contador.nodes, time.perf_counter() - inicio)


# --------------------------------------------------------------------------------------
# Sistema arco-iris minimo
# --------------------------------------------------------------------------------------


@dataclass
class RainbowOracleResult:
    count: Optional[int]
    cycles: List[RainbowCycle] = field(default_factory=list)
    degenerate_edges: List[MultiEdge] = field(default_factory=list)
    nodes: int = 0

    def to_dict(self) -> Dict[str, object]:
        return {
            "count": self.count,
            "cycles": [c.to_dict() for c in self.cycles],
            "degenerate_edges": [[a.u, a.v, a.colour] for a in self.degenerate_edges],
            "nodes": self.nodes,
        }


def iter_rainbow_cycles(
    G: EdgeColouredMultigraph,
    max_length: Optional[int] = None,
    forbidden_vertices: FrozenSet[int] = frozenset(),
    forbidden_colours: FrozenSet[Colour] = frozenset(),
    through: Optional[MultiEdge] = None,
) -> Iterator[RainbowCycle]:
    """
    Ciclos arco-iris (l >= 2; l = 2 usa duas arestas paralelas de cores distintas).

    Sem `through`, cada ciclo sai uma vez: comeca no menor vertice e o segundo vertice
    e menor que o ultimo. Com `through`, lista os ciclos que usam aquela aresta.
    """
    limite = max_length if max_length is not None else G.n

    def caminhos(seq: List[int], cores: List[Colour], alvo: int, minimo: int, tamanho_extra: int):
        atual = seq[-1]
        for cor, vizinhos in G.adjacency.get(atual, {}).items():
            if cor in proibidas or cor in cores:
                continue
            for w in sorted(vizinhos):
                if w == alvo:
                    if len(seq) + tamanho_extra >= 2:
                        yield list(seq), cores + [cor]
                    continue
                if w in seq or w in forbidden_vertices or w < minimo:
                    continue
                if len(seq) + tamanho_extra >= limite:
                    continue
                seq.append(w)
                yield from caminhos(seq, cores + [cor], alvo, minimo, tamanho_extra)
                seq.pop()

    if through is not None:
        a = through
        if a.colour in forbidden_colours or a.u in forbidden_vertices or a.v in forbidden_vertices:
            return
        proibidas = frozenset(forbidden_colours) | {a.colour}
        for seq, cores in caminhos([a.v], [], a.u, -1, 1):
            yield RainbowCycle((a.u, *seq), (a.colour, *cores))
        return

    proibidas = frozenset(forbidden_colours)
    for v0 in G.vertices:
        if v0 in forbidden_vertices:
            continue
        for seq, cores in caminhos([v0], [], v0, v0 + 1, 0):
            if len(seq) == 2:
                if colour_key(cores[0]) < colour_key(cores[1]):
                    yield RainbowCycle(tuple(seq), tuple(cores))
            elif seq[1] < seq[-1]:
                yield RainbowCycle(tuple(seq), tuple(cores))


def min_rainbow_cycle_system(G: EdgeColouredMultigraph) -> RainbowOracleResult:
    """
    Menor numero de componentes (arestas isoladas ou ciclos arco-iris), dois a dois
    disjuntos em vertices, cuja uniao e arco-iris com conjunto de cores φ(G).
    """
    cores = list(G.colours)
    if G.n > LIMITE_ORACULO_ARCO_IRIS_VERTICES or len(cores) > LIMITE_ORACULO_ARCO_IRIS_CORES:
        raise SizeGuardError(
            f"Instancia (n={G.n}, |φ|={len(cores)}) acima das guardas "
            f"({LIMITE_ORACULO_ARCO_IRIS_VERTICES}, {LIMITE_ORACULO_ARCO_IRIS_CORES})."
        )
    if not cores:
        return RainbowOracleResult(0)
    contador = NodeCounter()
    falhas: Set[Tuple[FrozenSet[int], FrozenSet[Colour], int]] = set()

    def busca(usados_v: FrozenSet[int], usadas_c: FrozenSet[Colour], profundidade: int):
        contador.tick()
        livres = [c for c in cores if c not in usadas_c]
        if not livres:
            return [], []
        if profundidade == 0 or (usados_v, usadas_c, profundidade) in falhas:
            return None
        cor = livres[0]
        for aresta in G.colour_class(cor):
            if aresta.u in usados_v or aresta.v in usados_v:
                continue
            for ciclo in iter_rainbow_cycles(G, None, usados_v, usadas_c, through=aresta):
                sub = busca(usados_v | set(ciclo.vertices), usadas_c | set(ciclo.colours), profundidade - 1)
                if sub is not None:
                    return [ciclo, *sub[0]], sub[1]
            sub = busca(usados_v | {aresta.u, aresta.v}, usadas_c | {cor}, profundidade - 1)
            if sub is not None:
                return sub[0], [aresta, *sub[1]]
        falhas.add((usados_v, usadas_c, profundidade))
        return None

    for profundidade in range(1, len(cores) + 1):
        achado = busca(frozenset(), frozenset(), profundidade)
        if achado is not None:
            ciclos, arestas = achado
            return RainbowOracleResult(len(ciclos) + len(arestas), ciclos, arestas, contador.nodes)
    return RainbowOracleResult(None, nodes=contador.nodes)


# --------------------------------------------------------------------------------------
# Enumeracao
# --------------------------------------------------------------------------------------


def enumerate_tight_cycles(H: ColouredKGraph, length: int) -> List[TightCycle]:
    if H.n > LIMITE_ENUMERACAO or H.k != 3:
        raise SizeGuardError(f"Enumeracao restrita a k=3 e n <= {LIMITE_ENUMERACAO} (recebido k={H.k}, n={H.n}).")
    if length < H.k + 1:
        raise InputError(f"Comprimento {length} < k+1 = {H.k + 1}.")
    canonicos = {ciclo.canonical().order for ciclo in iter_tight_cycles(H, length)}
    return [TightCycle(ordem) for ordem in sorted(canonicos)]
