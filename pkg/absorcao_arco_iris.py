#!/usr/bin/env python3
"""
Absorcao arco-iris em multigrafos coloridos por arestas.

Resumo do fluxo:
- greedy_rainbow_matching / rainbow_path_system: emparelhamento e sistema de caminhos arco-iris
  cobrindo todas as cores de G.
- u_set / expand_uset / check_g_maximal: conjuntos U_G(v, C, W) alcancaveis por caminhos
  arco-iris e a g-maximalidade (com as duas consequencias sobre U* = N_{G-G_C}[U]).
- build_bowtie / check_dg_partition / find_dg_partition: gravatas e (d, g)-particoes.
- close_rainbow_path: fecha um caminho arco-iris em ciclo usando uma gravata (casos B1 e B2).
- absorption_reservation / close_path_system / rainbow_cycle_system: a reserva iterada de gravatas,
  o fechamento dos caminhos (antes do emparelhamento das cores restantes) e o pipeline que
  devolve um sistema de ciclos arco-iris com φ = φ(G), ou StagedFailure nomeando o estagio.

Convencoes:
- Escolhas de vertice/cor usam o menor rotulo; nada aqui e aleatorio fora das amostras de
  caminhos do verificador (semente explicita).
- Passos que a contagem garante viram `garantir` (InvariantViolation); passos que dependem da
  escala viram StepFailure/StagedFailure.
- U contem sempre a raiz v (caminho trivial).

Dependencias: somente os modulos do pacote.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple, Union

from ciclos_apertados import NodeCounter
from configuracao import rng_para
from falhas import InputError, StagedFailure, StepFailure, garantir
from modelo_hipergrafo import (
    Colour,
    EdgeColouredMultigraph,
    MultiEdge,
    RainbowCycle,
    Verdict,
    colour_key,
    degree_profile,
    verify_rainbow_cycle,
    verify_rainbow_path,
)
from registro import log_etapa

Numero = Union[int, Fraction]

AMOSTRAS_CAMINHOS = 200
COMPRIMENTO_AMOSTRA = 6


def _fracao(valor) -> Fraction:
    if isinstance(valor, float):
        return Fraction(str(valor))
    return Fraction(valor)


def _cores_ordenadas(cores: Iterable[Colour]) -> List[Colour]:
    return sorted(cores, key=colour_key)


# --------------------------------------------------------------------------------------
# Caminhos e sistemas de caminhos
# --------------------------------------------------------------------------------------


@dataclass(frozen=True)
class RainbowPath:
    """Caminho x_1..x_l; colours[i] e a cor de x_(i+1) x_(i+2)."""

    vertices: Tuple[int, ...]
    colours: Tuple[Colour, ...]

    def __post_init__(self) -> None:
        vertices = tuple(int(v) for v in self.vertices)
        cores = tuple(self.colours)
        if not vertices or len(cores) != len(vertices) - 1:
            raise InputError("Caminho arco-iris exige uma cor por aresta.")
        if len(set(vertices)) != len(vertices):
            raise InputError(f"Caminho com vertice repetido: {vertices}")
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "colours", cores)

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def interior(self) -> Tuple[int, ...]:
        return self.vertices[1:-1]

    def reversed(self) -> "RainbowPath":
        return RainbowPath(self.vertices[::-1], self.colours[::-1])

    def edges(self) -> List[MultiEdge]:
        return [MultiEdge(self.vertices[i], self.vertices[i + 1], c) for i, c in enumerate(self.colours)]

    def to_dict(self) -> Dict[str, object]:
        return {"vertices": list(self.vertices), "colours": list(self.colours)}


@dataclass
class RainbowPathSystem:
    paths: List[RainbowPath]
    merges: int = 0
    bound: Optional[Fraction] = None

    def __len__(self) -> int:
        return len(self.paths)

    @property
    def colour_usage(self) -> Dict[Colour, int]:
        return {c: i for i, p in enumerate(self.paths) for c in p.colours}

    def vertices(self) -> Set[int]:
        return {v for p in self.paths for v in p.vertices}

    def to_dict(self) -> Dict[str, object]:
        return {
            "paths": [p.to_dict() for p in self.paths],
            "merges": self.merges,
            "bound": self.bound,
        }


def verify_rainbow_path_system(G: EdgeColouredMultigraph, S: RainbowPathSystem) -> Verdict:
    vistos: Set[int] = set()
    cores: Set[Colour] = set()
    for p in S.paths:
        veredito = verify_rainbow_path(G, p.vertices, p.colours)
        if not veredito.ok:
            return veredito
        if vistos & set(p.vertices):
            return Verdict(False, tuple(sorted(vistos & set(p.vertices))), "caminhos compartilham vertices")
        if cores & set(p.colours):
            return Verdict(False, tuple(_cores_ordenadas(cores & set(p.colours))), "cor usada em dois caminhos")
        vistos |= set(p.vertices)
        cores |= set(p.colours)
    return Verdict(True, extras={"covers": cores == set(G.colours), "paths": len(S.paths)})


def greedy_rainbow_matching(
    G: EdgeColouredMultigraph, colours: Optional[Iterable[Colour]] = None
) -> List[MultiEdge]:
    """
    Uma aresta por cor, disjuntas em vertices, processando as cores em ordem.

    Com δ_mon >= 2|φ| - 1 a cor i sempre tem aresta fora dos 2(i-1) vertices ja usados.
    `colours` restringe o emparelhamento (e a hipotese) a um subconjunto de cores.
    """
    if colours is None:
        cores = list(G.colours)
        alvo = G
    else:
        cores = _cores_ordenadas(set(colours))
        ausentes = set(cores) - set(G.colours)
        if ausentes:
            raise InputError(f"Cores sem arestas no multigrafo: {_cores_ordenadas(ausentes)}")
        alvo = G.without_colours(set(G.colours) - set(cores))
    if not cores:
        return []
    delta_mon = degree_profile(alvo).delta_mon
    if delta_mon < 2 * len(cores) - 1:
        raise InputError(f"δ_mon = {delta_mon} < 2|φ| - 1 = {2 * len(cores) - 1}.")

    usados: Set[int] = set()
    emparelhamento: List[MultiEdge] = []
    for cor in cores:
        escolha = None
        for a in sorted(alvo.colour_class(cor), key=lambda a: (min(a.u, a.v), max(a.u, a.v))):
            if a.u not in usados and a.v not in usados:
                escolha = MultiEdge(min(a.u, a.v), max(a.u, a.v), cor)
                break
        garantir(escolha is not None, "cor sem aresta livre apesar de δ_mon >= 2|φ|-1", cor=cor, usados=sorted(usados))
        emparelhamento.append(escolha)
        usados |= {escolha.u, escolha.v}
    garantir(len(emparelhamento) == len(cores), "emparelhamento nao cobre φ", tamanho=len(emparelhamento))
    return emparelhamento


def _orientacoes(p: RainbowPath) -> Tuple[RainbowPath, ...]:
    return (p, p.reversed())


def _procurar_fusao(G: EdgeColouredMultigraph, caminhos: Sequence[RainbowPath]):
    ocupados = {v for p in caminhos for v in p.vertices}
    for i in range(len(caminhos)):
        for j in range(i + 1, len(caminhos)):
            for pi in _orientacoes(caminhos[i]):
                for pj in _orientacoes(caminhos[j]):
                    comuns = G.neighbours(pi.vertices[1], pi.colours[0]) & G.neighbours(pj.vertices[1], pj.colours[0])
                    livres = sorted(comuns - ocupados)
                    if not livres:
                        continue
                    w = livres[0]
                    # v_q^j..v_2^j w v_2^i..v_q^i: as pontas v_1 saem e as cores das arestas iniciais migram para w
                    novo = RainbowPath(
                        (*pj.vertices[1:][::-1], w, *pi.vertices[1:]),
                        (*pj.colours[1:][::-1], pj.colours[0], pi.colours[0], *pi.colours[1:]),
                    )
                    return i, j, novo
    return None


def rainbow_path_system(G: EdgeColouredMultigraph, d: Numero) -> RainbowPathSystem:
    d = _fracao(d)
    cores = G.colours
    if not cores:
        return RainbowPathSystem([], 0, None)
    delta_mon = degree_profile(G).delta_mon
    if d < 4 * len(cores) or delta_mon < d:
        raise InputError(f"Exige δ_mon >= d >= 4|φ| (δ_mon={delta_mon}, d={d}, |φ|={len(cores)}).")

    caminhos = [RainbowPath((a.u, a.v), (a.colour,)) for a in greedy_rainbow_matching(G)]
    limite = Fraction(2 * G.n) / d
    fusoes = 0
    while len(caminhos) > limite:
        fusao = _procurar_fusao(G, caminhos)
        garantir(
            fusao is not None,
            "nenhum par de caminhos com vizinho comum fora de V(P)",
            caminhos=[p.to_dict() for p in caminhos],
            limite=limite,
        )
        i, j, novo = fusao
        antes = len(caminhos)
        caminhos = [p for idx, p in enumerate(caminhos) if idx not in (i, j)] + [novo]
        sistema = RainbowPathSystem(caminhos)
        veredito = verify_rainbow_path_system(G, sistema)
        garantir(len(caminhos) == antes - 1, "fusao nao reduziu |P| em 1", antes=antes, depois=len(caminhos))
        garantir(veredito.ok and veredito.extras["covers"], "fusao quebrou o sistema arco-iris", veredito=veredito.to_dict())
        fusoes += 1

    log_etapa("sistema_de_caminhos", caminhos=len(caminhos), fusoes=fusoes, limite=limite)
    return RainbowPathSystem(caminhos, fusoes, limite)


# --------------------------------------------------------------------------------------
# Conjuntos U e g-maximalidade
# --------------------------------------------------------------------------------------


@lru_cache(maxsize=4096)
def _alcancaveis(G: EdgeColouredMultigraph, v: int, C: FrozenSet[Colour], W: FrozenSet[int]) -> FrozenSet[int]:
    """Chave inclui o grafo: qualquer deflacao gera outro objeto e outra entrada."""
    alcancados = {v}

    def estender(atual: int, usadas: FrozenSet[Colour], visitados: Set[int]) -> None:
        por_cor = G.adjacency.get(atual, {})
        for cor in C - usadas:
            for x in por_cor.get(cor, ()):
                if x in visitados:
                    continue
                alcancados.add(x)
                if x in W:
                    visitados.add(x)
                    estender(x, usadas | {cor}, visitados)
                    visitados.discard(x)

    estender(v, frozenset(), {v})
    return frozenset(alcancados)


def u_set(G: EdgeColouredMultigraph, v: int, C: Iterable[Colour], W: Iterable[int]) -> FrozenSet[int]:
    """U_G(v, C, W): vertices ligados a v por caminho arco-iris com cores em C e interior em W."""
    if not 0 <= v < G.n:
        raise InputError(f"Vertice desconhecido: {v}")
    return _alcancaveis(G, int(v), frozenset(C), frozenset(W))


def _caminho_arco_iris(
    G: EdgeColouredMultigraph,
    origem: int,
    alvo: int,
    cores: FrozenSet[Colour],
    interior: FrozenSet[int],
    evitar: FrozenSet[int] = frozenset(),
    contador: Optional[NodeCounter] = None,
) -> Optional[RainbowPath]:
    if origem == alvo:
        return RainbowPath((origem,), ())

    def busca(seq: List[int], usadas: List[Colour]) -> Optional[RainbowPath]:
        if contador is not None:
            contador.tick()
        atual = seq[-1]
        por_cor = G.adjacency.get(atual, {})
        for cor in _cores_ordenadas(cores - set(usadas)):
            vizinhos = por_cor.get(cor, set())
            if alvo in vizinhos:
                return RainbowPath((*seq, alvo), (*usadas, cor))
            for x in sorted(vizinhos):
                if x in seq or x not in interior or x in evitar:
                    continue
                achado = busca(seq + [x], usadas + [cor])
                if achado is not None:
                    return achado
        return None

    return busca([origem], [])


def _vizinhanca_fechada(G: EdgeColouredMultigraph, U: Iterable[int]) -> FrozenSet[int]:
    fechada = set(U)
    for u in list(fechada):
        fechada |= G.neighbours(u)
    return frozenset(fechada)


@dataclass(frozen=True)
class GMaximalityViolation:
    case: int
    u: int
    w1: Optional[int]
    w2: Optional[int]
    colour: Colour
    c1: Optional[Colour] = None
    c2: Optional[Colour] = None
    degree: int = 0

    def added_colours(self) -> Set[Colour]:
        return {c for c in (self.colour, self.c1, self.c2) if c is not None}

    def added_vertices(self) -> Set[int]:
        return {x for x in (self.u, self.w1, self.w2) if x is not None}

    def as_tuple(self) -> Tuple[object, ...]:
        return (self.case, self.u, self.w1, self.w2, self.colour, self.c1, self.c2)


def _procurar_violacao(
    G: EdgeColouredMultigraph, C: FrozenSet[Colour], U: FrozenSet[int], g: Numero
) -> Optional[GMaximalityViolation]:
    """
    Configuracoes da definicao, na ordem dos tres casos: d_c(u, Ū), d_c(w1, Ū) com φ(u w1) = c1
    e d_c(w2, Ū) com φ(w1 w2) = c2, sempre com c, c1, c2 distintas fora de C.
    """
    fora = frozenset(G.vertices) - U

    def grau(x: int, cor: Colour) -> int:
        return len(G.adjacency.get(x, {}).get(cor, set()) & fora)

    for u in sorted(U):
        for cor in _cores_ordenadas(G.colours_at(u) - C):
            d = grau(u, cor)
            if d >= g:
                return GMaximalityViolation(1, u, None, None, cor, degree=d)
    for u in sorted(U):
        for c1 in _cores_ordenadas(G.colours_at(u) - C):
            for w1 in sorted(G.neighbours(u, c1)):
                for cor in _cores_ordenadas(G.colours_at(w1) - C - {c1}):
                    d = grau(w1, cor)
                    if d >= g:
                        return GMaximalityViolation(2, u, w1, None, cor, c1, degree=d)
    for u in sorted(U):
        for c1 in _cores_ordenadas(G.colours_at(u) - C):
            for w1 in sorted(G.neighbours(u, c1)):
                for c2 in _cores_ordenadas(G.colours_at(w1) - C - {c1}):
                    for w2 in sorted(G.neighbours(w1, c2) - {u}):
                        for cor in _cores_ordenadas(G.colours_at(w2) - C - {c1, c2}):
                            d = grau(w2, cor)
                            if d >= g:
                                return GMaximalityViolation(3, u, w1, w2, cor, c1, c2, degree=d)
    return None


@dataclass(frozen=True)
class USet:
    root: int
    colours: FrozenSet[Colour]
    waypoints: FrozenSet[int]
    members: FrozenSet[int]
    g: Numero
    graph: EdgeColouredMultigraph = field(repr=False, compare=False)
    iterations: int = 0
    growth: Tuple[int, ...] = ()

    @classmethod
    def of(cls, G: EdgeColouredMultigraph, v: int, C: Iterable[Colour], W: Iterable[int], g: Numero) -> "USet":
        C, W = frozenset(C), frozenset(W)
        return cls(v, C, W, u_set(G, v, C, W), g, G)

    def __len__(self) -> int:
        return len(self.members)

    def complement(self) -> FrozenSet[int]:
        return frozenset(self.graph.vertices) - self.members

    def star(self) -> FrozenSet[int]:
        return _vizinhanca_fechada(self.graph.without_colours(self.colours), self.members)

    def within_bounds(self) -> bool:
        limite = Fraction(3 * len(self.members)) / _fracao(self.g)
        return len(self.colours) <= limite and len(self.waypoints) <= limite

    def to_dict(self) -> Dict[str, object]:
        return {
            "root": self.root,
            "colours": _cores_ordenadas(self.colours),
            "waypoints": sorted(self.waypoints),
            "members": sorted(self.members),
            "g": self.g,
            "iterations": self.iterations,
            "growth": list(self.growth),
        }


def _expandir(G: EdgeColouredMultigraph, v: int, c: Colour, g: Numero) -> USet:
    C: FrozenSet[Colour] = frozenset({c})
    W: FrozenSet[int] = frozenset()
    U = u_set(G, v, C, W)
    crescimento: List[int] = []
    for _ in range(G.n + 1):
        violacao = _procurar_violacao(G, C, U, g)
        if violacao is None:
            break
        C = C | violacao.added_colours()
        W = W | (violacao.added_vertices() - {v})
        novo = u_set(G, v, C, W)
        garantir(novo >= U, "U diminuiu ao expandir", antes=len(U), depois=len(novo))
        garantir(len(novo) - len(U) >= g, "expansao ganhou menos que g vertices",
                 violacao=violacao.as_tuple(), ganho=len(novo) - len(U), g=g)
        crescimento.append(len(novo) - len(U))
        U = novo
    else:
        garantir(False, "expansao nao terminou em n passos", n=G.n)
    garantir(W <= G.v_star, "W fora de V*", W=sorted(W - G.v_star))
    return USet(v, C, W, U, g, G, len(crescimento), tuple(crescimento))


def expand_uset(G: EdgeColouredMultigraph, v: int, c: Colour, g: Numero) -> USet:
    """Parte de ({c}, ∅) e absorve configuracoes violadoras ate U ficar g-maximal."""
    if v not in G.v_star:
        raise InputError(f"Vertice {v} nao esta em V* (ve menos de duas cores).")
    if c not in G.colours_at(v):
        raise InputError(f"Cor {c!r} nao incide em {v}.")
    if g <= 0:
        raise InputError(f"g deve ser positivo (recebido {g}).")
    resultado = _expandir(G, v, c, g)
    log_etapa(
        "expand_uset",
        raiz=v,
        cor=c,
        g=g,
        tamanho=len(resultado),
        cores=len(resultado.colours),
        waypoints=len(resultado.waypoints),
        iteracoes=resultado.iterations,
    )
    return resultado


def _amostrar_caminhos(G: EdgeColouredMultigraph, amostras: int, semente: int) -> List[RainbowPath]:
    rng = rng_para(semente, "caminhos_arco_iris", G.n, len(G.edges))
    base = sorted(G.non_isolated())
    caminhos = []
    if not base:
        return caminhos
    for _ in range(amostras):
        seq = [rng.choice(base)]
        cores: List[Colour] = []
        for _ in range(COMPRIMENTO_AMOSTRA):
            opcoes = [
                (cor, x)
                for cor in _cores_ordenadas(G.colours_at(seq[-1]) - set(cores))
                for x in sorted(G.neighbours(seq[-1], cor))
                if x not in seq
            ]
            if not opcoes:
                break
            cor, x = rng.choice(opcoes)
            seq.append(x)
            cores.append(cor)
        if len(seq) >= 3:
            caminhos.append(RainbowPath(tuple(seq), tuple(cores)))
    return caminhos


def check_g_maximal(U: USet, amostras: int = AMOSTRAS_CAMINHOS, semente: int = 0) -> Verdict:
    """
    Busca exaustiva de configuracao violadora. Quando δ*_mon(G) > g tambem confere:
    (i) d_c(x, Ū) < g para x ∈ U* ∩ V*(G - G_C) e c fora de C;
    (ii) em caminhos arco-iris amostrados de G - G_C, int(P) toca U* => int(P) ⊆ U*.
    """
    G = U.graph
    extras: Dict[str, object] = {
        "size": len(U),
        "skeleton_in_u": ({U.root} | U.waypoints) <= U.members,
        "within_bounds": U.within_bounds() if U.g > 0 else None,
    }
    violacao = _procurar_violacao(G, U.colours, U.members, U.g)
    if violacao is not None:
        return Verdict(False, violacao.as_tuple(), f"caso {violacao.case}: grau {violacao.degree} >= g", extras)

    delta_star = degree_profile(G).delta_mon_star
    hipotese = delta_star is not None and delta_star > U.g
    extras["path_consequences_checked"] = hipotese
    if not hipotese:
        return Verdict(True, extras=extras)

    resto = G.without_colours(U.colours)
    estrela = U.star()
    fora = U.complement()
    for x in sorted(estrela & resto.v_star):
        for cor in _cores_ordenadas(resto.colours_at(x)):
            if resto.d_c(x, cor, fora) >= U.g:
                return Verdict(False, (x, cor), "vizinhanca de U com grau alto para fora de U", extras)
    caminhos = _amostrar_caminhos(resto, amostras, semente)
    for p in caminhos:
        interior = set(p.interior)
        if interior & estrela and not interior <= estrela:
            return Verdict(False, p.vertices, "caminho entra em U* e sai pelo interior", extras)
    extras["sampled_paths"] = len(caminhos)
    return Verdict(True, extras=extras)


# --------------------------------------------------------------------------------------
# Gravatas
# --------------------------------------------------------------------------------------


@dataclass(frozen=True)
class Bowtie:
    centre: int
    C1: FrozenSet[Colour]
    W1: FrozenSet[int]
    C2: FrozenSet[Colour]
    W2: FrozenSet[int]

    def __post_init__(self) -> None:
        for nome in ("C1", "W1", "C2", "W2"):
            object.__setattr__(self, nome, frozenset(getattr(self, nome)))
        if not self.C1 or not self.C2:
            raise InputError("Gravata exige C1 e C2 nao vazios.")
        if self.C1 & self.C2:
            raise InputError(f"C1 e C2 se intersectam: {_cores_ordenadas(self.C1 & self.C2)}")
        if self.W1 & self.W2:
            raise InputError(f"W1 e W2 se intersectam: {sorted(self.W1 & self.W2)}")
        if self.centre in self.W1 | self.W2:
            raise InputError("O centro nao pode estar em W1 ∪ W2.")

    @property
    def colours(self) -> FrozenSet[Colour]:
        return self.C1 | self.C2

    @property
    def waypoints(self) -> FrozenSet[int]:
        return frozenset({self.centre}) | self.W1 | self.W2

    def side(self, i: int) -> Tuple[FrozenSet[Colour], FrozenSet[int]]:
        return (self.C1, self.W1) if i == 1 else (self.C2, self.W2)

    def swapped(self) -> "Bowtie":
        return Bowtie(self.centre, self.C2, self.W2, self.C1, self.W1)

    def host_for(self, G: EdgeColouredMultigraph, i: int) -> EdgeColouredMultigraph:
        """G \\ W_(3-i) - G_(C_(3-i))."""
        cores, vertices = self.side(3 - i)
        return G.without_vertices(vertices).without_colours(cores)

    def u_sets(self, G: EdgeColouredMultigraph) -> Tuple[FrozenSet[int], FrozenSet[int]]:
        return (
            u_set(self.host_for(G, 1), self.centre, self.C1, self.W1),
            u_set(self.host_for(G, 2), self.centre, self.C2, self.W2),
        )

    def to_dict(self) -> Dict[str, object]:
        return {
            "centre": self.centre,
            "C1": _cores_ordenadas(self.C1),
            "W1": sorted(self.W1),
            "C2": _cores_ordenadas(self.C2),
            "W2": sorted(self.W2),
        }

    @classmethod
    def from_dict(cls, dados: Dict[str, object]) -> "Bowtie":
        try:
            return cls(int(dados["centre"]), dados["C1"], dados["W1"], dados["C2"], dados["W2"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"Gravata invalida: {exc}") from exc


def bowtie_is_g_maximal(G: EdgeColouredMultigraph, B: Bowtie, g: Numero) -> Verdict:
    for i in (1, 2):
        cores, vertices = B.side(i)
        veredito = check_g_maximal(USet.of(B.host_for(G, i), B.centre, cores, vertices, g), amostras=0)
        if not veredito.ok:
            veredito.detail = f"lado {i}: {veredito.detail}"
            return veredito
    return Verdict(True)


def _montar_bowtie(G: EdgeColouredMultigraph, v: int, c1: Colour, c2: Colour, g: Numero, strict: bool) -> Bowtie:
    n = G.n
    primeiro = _expandir(G.without_colours({c2}), v, c1, g)
    segundo_host = G.without_vertices(primeiro.waypoints).without_colours(primeiro.colours)
    if c2 not in segundo_host.colours_at(v):
        raise StepFailure(
            "gravata",
            f"todas as arestas de cor {c2!r} em {v} caem em W1",
            {"centre": v, "W1": sorted(primeiro.waypoints)},
        )
    segundo = _expandir(segundo_host, v, c2, g)
    B = Bowtie(v, primeiro.colours, primeiro.waypoints, segundo.colours, segundo.waypoints)

    u1, u2 = B.u_sets(G)
    folga = Fraction(3 * n) / _fracao(g)
    limites = {
        "u1": len(u1) >= G.d_c(v, c1) - folga,
        "u2": len(u2) >= G.d_c(v, c2) - folga,
        "cores": len(B.colours) <= 2 * folga,
        "waypoints": len(B.W1) + len(B.W2) <= 2 * folga,
    }
    if strict:
        garantir(all(limites.values()), "limites da gravata violados", limites=limites, gravata=B.to_dict())
    log_etapa("gravata", centro=v, c1=c1, c2=c2, u1=len(u1), u2=len(u2), cores=len(B.colours), limites=limites)
    return B


def build_bowtie(
    G: EdgeColouredMultigraph, v: int, c1: Colour, c2: Colour, g: Numero, strict: bool = True
) -> Bowtie:
    """Expande (v, c1) em G - G_c2 e depois (v, c2) em G \\ W1 - G_C1."""
    if c1 == c2:
        raise InputError("c1 e c2 devem ser distintas.")
    if g <= 0:
        raise InputError(f"g deve ser positivo (recebido {g}).")
    limiar = _fracao(g) + Fraction(3 * G.n) / _fracao(g)
    for cor in (c1, c2):
        if cor not in G.colours_at(v):
            raise InputError(f"Cor {cor!r} nao incide em {v}.")
    if strict and min(G.d_c(v, c1), G.d_c(v, c2)) < limiar:
        raise InputError(
            f"d_c1(v)={G.d_c(v, c1)}, d_c2(v)={G.d_c(v, c2)} abaixo de g + 3n/g = {float(limiar):.2f}."
        )
    return _montar_bowtie(G, v, c1, c2, g, strict)


# --------------------------------------------------------------------------------------
# (d, g)-particoes
# --------------------------------------------------------------------------------------


@dataclass(frozen=True)
class BowtieShadow:
    u1: FrozenSet[int]
    u2: FrozenSet[int]
    u1_star: FrozenSet[int]
    u2_star: FrozenSet[int]


def _deflacionar(G: EdgeColouredMultigraph, familia: Iterable[Bowtie]) -> EdgeColouredMultigraph:
    """G - ℬ = G \\ W(ℬ) - G_φ(ℬ)."""
    familia = list(familia)
    vertices = set().union(*(B.waypoints for B in familia)) if familia else set()
    cores = set().union(*(B.colours for B in familia)) if familia else set()
    return G.without_vertices(vertices).without_colours(cores)


def bowtie_shadows(G: EdgeColouredMultigraph, family: Sequence[Bowtie]) -> List[BowtieShadow]:
    """U_i(B|G, ℬ) e U_i*(B|G, ℬ) para cada gravata da familia."""
    deflacionado = _deflacionar(G, family)
    cores = set().union(*(B.colours for B in family)) if family else set()
    sem_cores = G.without_colours(cores)
    vstar = deflacionado.v_star
    sombras = []
    for j, B in enumerate(family):
        base = _deflacionar(G, [b for i, b in enumerate(family) if i != j])
        u1, u2 = B.u_sets(base)
        sombras.append(
            BowtieShadow(u1, u2, _vizinhanca_fechada(sem_cores, u1) & vstar, _vizinhanca_fechada(sem_cores, u2) & vstar)
        )
    return sombras


@dataclass
class DGPartition:
    family: List[Bowtie]
    d: Numero
    g: Numero
    weak: bool = False
    verdict: Optional[Verdict] = None
    notes: Dict[str, object] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.family)

    def to_dict(self) -> Dict[str, object]:
        return {
            "family": [B.to_dict() for B in self.family],
            "d": self.d,
            "g": self.g,
            "weak": self.weak,
            "verdict": self.verdict.to_dict() if self.verdict else None,
            "notes": self.notes,
        }


def _disjuntos(conjuntos: Sequence[FrozenSet]) -> bool:
    return sum(len(c) for c in conjuntos) == len(frozenset().union(*conjuntos)) if conjuntos else True


def check_dg_partition(
    G: EdgeColouredMultigraph, family: Sequence[Bowtie], d: Numero, g: Numero, weak: bool = False
) -> Verdict:
    """Cada propriedade P1..P6 sai em extras["properties"]; P6 so e exigida quando weak=False."""
    family = list(family)
    sombras = bowtie_shadows(G, family)
    props: Dict[str, bool] = {}
    props["P1"] = all(len(s.u1) >= d and len(s.u2) >= d for s in sombras)
    waypoints = [B.waypoints for B in family]
    props["P2"] = _disjuntos(waypoints) and all(w <= G.v_star for w in waypoints)
    props["P3"] = _disjuntos([B.colours for B in family])
    maximal = True
    for j, B in enumerate(family):
        base = _deflacionar(G, [b for i, b in enumerate(family) if i != j])
        if not bowtie_is_g_maximal(base, B, g).ok:
            maximal = False
            break
    props["P4"] = maximal
    props["P5"] = _disjuntos([s.u2_star for s in sombras])
    uniao = frozenset().union(*(s.u2_star for s in sombras)) if sombras else frozenset()
    props["P6"] = props["P5"] and uniao == _deflacionar(G, family).v_star

    exigidas = ["P1", "P2", "P3", "P4", "P5"] + ([] if weak else ["P6"])
    extras: Dict[str, object] = {"properties": props, "bowties": len(family)}
    if props["P1"] and props["P2"] and props["P3"]:
        extras["size_bound"] = len(family) <= Fraction(G.n) / _fracao(d) if d > 0 else None
    for nome in exigidas:
        if not props[nome]:
            return Verdict(False, nome, f"propriedade {nome} falhou", extras)
    return Verdict(True, extras=extras)


def _hipoteses_particao(G: EdgeColouredMultigraph, d: Fraction, g: Fraction) -> Dict[str, bool]:
    n = G.n
    delta_star = degree_profile(G).delta_mon_star
    return {
        "d_4g": d >= 4 * g,
        "g_3n_g": g > 0 and g >= Fraction(3 * n) / g,
        "g_12n2_gd": g > 0 and d > 0 and g >= Fraction(12 * n * n) / (g * d),
        "delta_star": delta_star is None or delta_star >= d,
    }


def _duas_cores(G: EdgeColouredMultigraph, v: int) -> Tuple[Colour, Colour]:
    cores = sorted(G.colours_at(v), key=lambda c: (-G.d_c(v, c), colour_key(c)))
    return cores[0], cores[1]


def find_dg_partition(
    G: EdgeColouredMultigraph,
    d: Numero,
    g: Numero,
    seed_family: Union[DGPartition, Sequence[Bowtie], None] = None,
    strict: bool = True,
) -> DGPartition:
    """
    Estende uma (d/2, g)-particao fraca ate cobrir V*(G - ℬ): enquanto sobra vertice descoberto,
    monta uma gravata g-maximal nele (no grafo deflacionado) e acrescenta a familia.

    strict=True exige as hipoteses de contagem (InputError) e trata o ramo de contradicao como
    InvariantViolation; strict=False registra as hipoteses em notes e so verifica a saida.
    """
    d, g = _fracao(d), _fracao(g)
    if isinstance(seed_family, DGPartition):
        familia = list(seed_family.family)
    else:
        familia = list(seed_family or [])
    hipoteses = _hipoteses_particao(G, d, g)
    if familia:
        hipoteses["semente_fraca"] = check_dg_partition(G, familia, d / 2, g, weak=True).ok
    faltando = [nome for nome, ok in hipoteses.items() if not ok]
    if strict and faltando:
        raise InputError(f"Hipoteses da particao nao atendidas: {', '.join(faltando)}")

    iteracoes = 0
    for iteracoes in range(G.n + 1):
        sombras = bowtie_shadows(G, familia)
        deflacionado = _deflacionar(G, familia)
        cobertos = frozenset().union(*(s.u2_star for s in sombras)) if sombras else frozenset()
        descobertos = sorted(deflacionado.v_star - cobertos)
        if not descobertos:
            break
        v = descobertos[0]
        c1, c2 = _duas_cores(deflacionado, v)
        nova = familia + [_montar_bowtie(deflacionado, v, c1, c2, g, strict)]
        if strict:
            novas_sombras = bowtie_shadows(G, nova)
            garantir(
                _disjuntos([s.u2_star for s in novas_sombras]),
                "U2* da nova gravata intersecta U2* de outra",
                centro=v,
                familia=[B.to_dict() for B in nova],
            )
        familia = nova
    else:
        raise StepFailure(
            "particao",
            f"cobertura de V* nao fechou em {G.n} iteracoes",
            {"bowties": len(familia), "descobertos": descobertos[:10]},
        )

    veredito = check_dg_partition(G, familia, d / 2, g)
    if strict:
        garantir(veredito.ok, "particao de saida reprovada", veredito=veredito.to_dict())
    log_etapa("particao", bowties=len(familia), iteracoes=iteracoes, ok=veredito.ok, hipoteses=hipoteses)
    return DGPartition(familia, d / 2, g, False, veredito, {"hypotheses": hipoteses, "iterations": iteracoes})


# --------------------------------------------------------------------------------------
# Fechamento de caminhos
# --------------------------------------------------------------------------------------


def close_rainbow_path(
    G: EdgeColouredMultigraph,
    B: Bowtie,
    P: RainbowPath,
    S: Iterable[int] = (),
    mode: str = "B1",
    d: Optional[Numero] = None,
) -> RainbowCycle:
    """
    B1: um unico x ∈ U2 fora de S ∪ V(P) substitui as duas pontas (φ preservado).
    B2: as pontas sao desviadas por y1 ∈ U1 e y2 ∈ U2 ate o centro, por caminhos em W1/W2.
    Com `d` informado, confere |U2| <= 3d/4 (B1) ou U1* = U2* (B2).
    """
    if len(P) < 3:
        raise InputError("Fechamento exige caminho com ao menos 3 vertices.")
    if mode not in ("B1", "B2"):
        raise InputError(f"Modo desconhecido: {mode!r} (use B1 ou B2).")
    proibidos = frozenset(S) | frozenset(P.vertices)
    u1, u2 = B.u_sets(G)
    sem_cores = G.without_colours(B.colours)
    if not set(P.interior) <= _vizinhanca_fechada(sem_cores, u2):
        raise InputError("O interior do caminho nao esta em U2* da gravata.")
    if d is not None:
        if mode == "B1" and len(u2) > Fraction(3) * _fracao(d) / 4:
            raise InputError(f"|U2| = {len(u2)} acima de 3d/4.")
        if mode == "B2":
            vstar = _deflacionar(G, [B]).v_star
            if _vizinhanca_fechada(sem_cores, u1) & vstar != _vizinhanca_fechada(sem_cores, u2) & vstar:
                raise InputError("Gravata nao coberta: U1* != U2*.")

    x2, xl1 = P.vertices[1], P.vertices[-2]
    ci, cf = P.colours[0], P.colours[-1]

    if mode == "B1":
        A = G.neighbours(x2, ci) & u2
        Z = G.neighbours(xl1, cf) & u2
        candidatos = sorted((A & Z) - proibidos)
        if not candidatos:
            folga = len(A) + len(Z) - len(u2) - len(proibidos & u2)
            garantir(folga <= 0, "contagem garante vertice comum em U2", folga=folga)
            raise StepFailure(
                "fechamento",
                "nenhum vertice comum em U2 fora de S ∪ V(P)",
                {"u2": len(u2), "pontas": [x2, xl1], "cores": [ci, cf]},
            )
        x = candidatos[0]
        ciclo = RainbowCycle((x, *P.interior), (ci, *P.colours[1:-1], cf))
        garantir(set(ciclo.colours) == set(P.colours), "B1 alterou as cores", ciclo=ciclo.to_dict())
    else:
        ciclo = _fechar_pelo_centro(G, B, P, proibidos, u1, u2)

    veredito = verify_rainbow_cycle(G, ciclo)
    garantir(veredito.ok, "ciclo fechado reprovado", veredito=veredito.to_dict())
    garantir(not set(ciclo.vertices) & set(S), "ciclo usa vertice proibido", ciclo=ciclo.to_dict())
    garantir(
        set(P.colours) <= set(ciclo.colours) <= set(P.colours) | B.colours,
        "cores fora do intervalo φ(P) ⊆ φ(C) ⊆ φ(P) ∪ φ(B)",
        ciclo=ciclo.to_dict(),
    )
    log_etapa("fechamento", modo=mode, comprimento=len(ciclo), centro=B.centre)
    return ciclo


def _fechar_pelo_centro(
    G: EdgeColouredMultigraph,
    B: Bowtie,
    P: RainbowPath,
    proibidos: FrozenSet[int],
    u1: FrozenSet[int],
    u2: FrozenSet[int],
) -> RainbowCycle:
    if B.centre in proibidos:
        raise StepFailure(
            "fechamento",
            "centro da gravata proibido (em S ∪ V(P))",
            {"centro": B.centre},
        )
    x2, xl1 = P.vertices[1], P.vertices[-2]
    ci, cf = P.colours[0], P.colours[-1]
    cores1 = B.C1 - set(P.colours)
    cores2 = B.C2 - set(P.colours)
    base1, base2 = B.host_for(G, 1), B.host_for(G, 2)
    for y1 in sorted((G.neighbours(x2, ci) & u1) - proibidos - {B.centre}):
        ida = _caminho_arco_iris(base1, y1, B.centre, cores1, B.W1, proibidos)
        if ida is None:
            continue
        usados = proibidos | set(ida.vertices)
        for y2 in sorted((G.neighbours(xl1, cf) & u2) - usados):
            volta = _caminho_arco_iris(base2, B.centre, y2, cores2, B.W2, usados - {B.centre})
            if volta is None:
                continue
            # y1 .. v .. y2 x_(l-1) .. x_2 (y1)
            return RainbowCycle(
                (*ida.vertices, *volta.vertices[1:], *P.interior[::-1]),
                (*ida.colours, *volta.colours, cf, *P.colours[1:-1][::-1], ci),
            )
    raise StepFailure(
        "fechamento",
        "nenhuma rota pelo centro da gravata evitando S ∪ V(P)",
        {"centro": B.centre, "u1": len(u1), "u2": len(u2)},
    )


# --------------------------------------------------------------------------------------
# Reserva por absorcao
# --------------------------------------------------------------------------------------


@dataclass
class ReservationStage:
    index: int
    family: List[Bowtie]
    host: EdgeColouredMultigraph = field(repr=False)
    graph: EdgeColouredMultigraph = field(repr=False)
    residual: EdgeColouredMultigraph = field(repr=False)
    shadows: List[BowtieShadow] = field(repr=False, default_factory=list)
    small: List[int] = field(default_factory=list)
    covered_children: List[int] = field(default_factory=list)
    rest: List[int] = field(default_factory=list)
    properties: Dict[str, bool] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, object]:
        return {
            "index": self.index,
            "family": [B.to_dict() for B in self.family],
            "small": self.small,
            "covered_children": self.covered_children,
            "rest": self.rest,
            "properties": self.properties,
            "v_star_residual": len(self.residual.v_star),
        }


@dataclass
class Reservation:
    graph: EdgeColouredMultigraph = field(repr=False)
    core: EdgeColouredMultigraph = field(repr=False)
    stages: List[ReservationStage]
    d: Fraction
    g: Numero
    capped: bool = False
    hypotheses: Dict[str, bool] = field(default_factory=dict)

    @property
    def reserved_colours(self) -> Set[Colour]:
        return set(self.graph.colours) - set(self.core.colours)

    @property
    def reserved_vertices(self) -> Set[int]:
        return {v for st in self.stages for B in st.family for v in B.waypoints}

    def closer_for(self, P: RainbowPath) -> Optional[Tuple[int, int, str]]:
        interior = set(P.interior)
        for s, st in enumerate(self.stages):
            for j in st.small + st.covered_children:
                if interior <= st.shadows[j].u2_star:
                    return s, j, "B1" if j in st.small else "B2"
        return None

    def close(self, P: RainbowPath, S: Iterable[int] = ()) -> RainbowCycle:
        achado = self.closer_for(P)
        if achado is None:
            raise StepFailure("fechamento", "nenhuma gravata reservada cobre o interior do caminho", {"path": P.to_dict()})
        s, j, modo = achado
        st = self.stages[s]
        B = st.family[j]
        hospedeiro = _deflacionar(st.host, [b for i, b in enumerate(st.family) if i != j])
        proibidos = set(S) | (self.reserved_vertices - B.waypoints)
        return close_rainbow_path(hospedeiro, B, P, proibidos, modo)

    def to_dict(self) -> Dict[str, object]:
        return {
            "stages": [st.to_dict() for st in self.stages],
            "d": self.d,
            "g": self.g,
            "capped": self.capped,
            "hypotheses": self.hypotheses,
            "reserved_colours": _cores_ordenadas(self.reserved_colours),
            "reserved_vertices": sorted(self.reserved_vertices),
        }


def _estagio(
    indice: int,
    familia: List[Bowtie],
    G_ant: EdgeColouredMultigraph,
    H_ant: EdgeColouredMultigraph,
    anterior: Optional[ReservationStage],
    d: Fraction,
) -> ReservationStage:
    n = G_ant.n
    sombras = bowtie_shadows(H_ant, familia)
    J = _deflacionar(G_ant, familia)
    pares = [
        (a, b)
        for i, si in enumerate(sombras)
        for j, sj in enumerate(sombras)
        if i < j
        for a in si.u2_star
        for b in sj.u2_star
    ]
    Gi = J.without_edges_between(pares)

    pequenos = [j for j, s in enumerate(sombras) if len(s.u2) <= Fraction(3) * d / 4]
    cobertos: List[int] = []
    if anterior is not None:
        for p in range(len(anterior.family)):
            filhos = [j for j, B in enumerate(familia) if B.waypoints <= anterior.shadows[p].u2_star]
            if len(filhos) == 1 and sombras[filhos[0]].u2_star == sombras[filhos[0]].u1_star:
                cobertos.append(filhos[0])
    cobertos = sorted(set(cobertos) - set(pequenos))
    resto = [j for j in range(len(familia)) if j not in pequenos and j not in cobertos]
    uniao_resto = frozenset().union(*(sombras[j].u2_star for j in resto)) if resto else frozenset()
    Hi = Gi.without_vertices(Gi.v_star - uniao_resto)

    cores_familia = set().union(*(B.colours for B in familia)) if familia else set()
    props = {
        "cores": set(Gi.colours) <= set(G_ant.colours) - cores_familia,
        "isolamento": not any(
            set(Gi.neighbours(a)) & sj.u2_star
            for i, si in enumerate(sombras)
            for j, sj in enumerate(sombras)
            if i != j
            for a in si.u2_star
        ),
        "residuo": Hi.v_star <= uniao_resto,
        "encolhimento": all(len(sombras[j].u2_star) <= n - indice * d / 4 for j in resto),
        "disjuncao_u2": _disjuntos([s.u2_star for s in sombras]),
    }
    garantir(props["isolamento"] and props["residuo"], "G^i/H^i mal construidos", propriedades=props)
    return ReservationStage(indice, familia, H_ant, Gi, Hi, sombras, pequenos, cobertos, resto, props)


def absorption_reservation(
    G: EdgeColouredMultigraph,
    delta: Numero,
    strict: bool = False,
    budget: Optional[int] = None,
) -> Reservation:
    """
    Refinamento iterado: ℬ^1 e uma (d/2, g)-particao de G; a cada estagio separa as gravatas
    pequenas (ℬ1), as filhas de pais cobertos (ℬ2) e o resto (ℬ3), isola os U2* entre si em G^i,
    restringe H^i aos U2* de ℬ3 e reparticiona (trocando os lados das filhas unicas nao cobertas).
    Para quando V*(H^i) esvazia; G* = G^i. Limite de n estagios, sinalizado em `capped`.
    """
    delta = _fracao(delta)
    if not 0 < delta <= 1:
        raise InputError(f"delta fora de (0, 1]: {delta}")
    n = G.n
    d = delta * n
    g = max(1, math.floor(delta * delta * n / 16))
    contador = NodeCounter(budget)

    particao = find_dg_partition(G, d, g, strict=strict)
    familia = particao.family
    G_ant, H_ant = G, G
    estagios: List[ReservationStage] = []
    anterior: Optional[ReservationStage] = None
    capped = True
    for indice in range(1, n + 1):
        contador.tick()
        st = _estagio(indice, familia, G_ant, H_ant, anterior, d)
        estagios.append(st)
        if strict and not all(st.properties.values()):
            falhas = [k for k, ok in st.properties.items() if not ok]
            raise StagedFailure("reserva", f"estagio_{indice}", f"propriedades reprovadas: {falhas}", st.to_dict())
        log_etapa(
            "reserva",
            estagio=indice,
            bowties=len(familia),
            pequenos=len(st.small),
            cobertos=len(st.covered_children),
            resto=len(st.rest),
            v_star_residual=len(st.residual.v_star),
            propriedades=st.properties,
        )
        if not st.residual.v_star:
            capped = False
            break
        novos = list(find_dg_partition(st.residual, d / 2, g, strict=strict).family)
        sombras_novas = bowtie_shadows(st.residual, novos)
        for p in range(len(familia)):
            filhos = [j for j, B in enumerate(novos) if B.waypoints <= st.shadows[p].u2_star]
            if len(filhos) == 1 and sombras_novas[filhos[0]].u2_star != sombras_novas[filhos[0]].u1_star:
                novos[filhos[0]] = novos[filhos[0]].swapped()
        familia = find_dg_partition(st.residual, d / 2, g, seed_family=novos, strict=strict).family
        G_ant, H_ant, anterior = st.graph, st.residual, st

    reserva = Reservation(G, estagios[-1].graph, estagios, d, g, capped, particao.notes.get("hypotheses", {}))
    garantir(
        not reserva.reserved_vertices & reserva.core.non_isolated(),
        "vertice reservado ainda tem arestas em G*",
        vertices=sorted(reserva.reserved_vertices & reserva.core.non_isolated()),
    )
    return reserva


# --------------------------------------------------------------------------------------
# Sistema de ciclos arco-iris
# --------------------------------------------------------------------------------------


@dataclass
class CycleSystem:
    cycles: List[RainbowCycle]
    degenerate_edges: List[MultiEdge]
    branch: str = "matching"
    notes: Dict[str, object] = field(default_factory=dict)

    @property
    def count(self) -> int:
        return len(self.cycles) + len(self.degenerate_edges)

    def colours(self) -> List[Colour]:
        return [c for ciclo in self.cycles for c in ciclo.colours] + [a.colour for a in self.degenerate_edges]

    def to_dict(self) -> Dict[str, object]:
        return {
            "cycles": [c.to_dict() for c in self.cycles],
            "degenerate_edges": [[a.u, a.v, a.colour] for a in self.degenerate_edges],
            "branch": self.branch,
            "count": self.count,
            "notes": self.notes,
        }

    @classmethod
    def from_dict(cls, dados: Dict[str, object]) -> "CycleSystem":
        try:
            return cls(
                [RainbowCycle.from_dict(c) for c in dados.get("cycles", [])],
                [MultiEdge(int(u), int(v), c) for u, v, c in dados.get("degenerate_edges", [])],
                str(dados.get("branch", "matching")),
                dict(dados.get("notes", {})),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"Sistema de ciclos invalido: {exc}") from exc


def verify_rainbow_cycle_system(G: EdgeColouredMultigraph, system: CycleSystem) -> Verdict:
    vistos: Set[int] = set()
    for ciclo in system.cycles:
        veredito = verify_rainbow_cycle(G, ciclo)
        if not veredito.ok:
            return veredito
        if vistos & set(ciclo.vertices):
            return Verdict(False, tuple(sorted(vistos & set(ciclo.vertices))), "componentes compartilham vertices")
        vistos |= set(ciclo.vertices)
    for a in system.degenerate_edges:
        if a.colour not in G.edge_colours(a.u, a.v):
            return Verdict(False, (a.u, a.v, a.colour), "aresta degenerada ausente no multigrafo")
        if vistos & {a.u, a.v}:
            return Verdict(False, (a.u, a.v), "componentes compartilham vertices")
        vistos |= {a.u, a.v}
    cores = system.colours()
    if len(cores) != len(set(cores)):
        repetidas = sorted({c for c in cores if cores.count(c) > 1}, key=colour_key)
        return Verdict(False, tuple(repetidas), "uniao nao e arco-iris")
    if set(cores) != set(G.colours):
        faltando = _cores_ordenadas(set(G.colours) - set(cores))
        return Verdict(False, tuple(faltando), "cores do sistema diferem de φ(G)")
    return Verdict(True, extras={"count": system.count})


def rainbow_cycle_system(
    G: EdgeColouredMultigraph,
    delta0: Numero,
    budget: Optional[int] = None,
    force_absorption: bool = False,
    strict: bool = False,
) -> CycleSystem:
    """
    Com poucas cores (|φ| <= 2^18 δ0^-5) o emparelhamento arco-iris guloso ja e o sistema.
    Senao: reservas sucessivas, sistema de caminhos no nucleo G*, emparelhamento das cores
    reservadas fora dos caminhos e fechamento de cada caminho longo por uma reserva propria.
    """
    delta0 = _fracao(delta0)
    if not 0 < delta0 <= 1:
        raise InputError(f"delta0 fora de (0, 1]: {delta0}")
    cores = G.colours
    if not cores:
        return CycleSystem([], [], "empty")
    n = G.n
    delta_mon = degree_profile(G).delta_mon
    if delta_mon < delta0 * n:
        raise InputError(f"δ_mon = {delta_mon} < δ0·n = {float(delta0 * n):.2f}.")
    if len(cores) > delta0 * n / 16:
        raise InputError(f"|φ| = {len(cores)} > δ0·n/16 = {float(delta0 * n / 16):.2f}.")

    limiar = Fraction(2 ** 18) / delta0 ** 5
    if len(cores) <= limiar and not force_absorption:
        sistema = CycleSystem([], greedy_rainbow_matching(G), "matching", {"threshold": limiar})
        veredito = verify_rainbow_cycle_system(G, sistema)
        garantir(veredito.ok, "emparelhamento reprovado como sistema", veredito=veredito.to_dict())
        log_etapa("sistema_de_ciclos", ramo="matching", componentes=sistema.count)
        return sistema
    return _pipeline_absorcao(G, delta0, budget, strict, limiar)


def _pipeline_absorcao(
    G: EdgeColouredMultigraph, delta0: Fraction, budget: Optional[int], strict: bool, limiar: Fraction
) -> CycleSystem:
    n = G.n
    rodadas = math.ceil(4 / delta0)
    reservas: List[Reservation] = []
    nucleo = G
    for rodada in range(rodadas):
        try:
            reserva = absorption_reservation(nucleo, delta0 / 2, strict=strict, budget=budget)
        except StepFailure as exc:
            raise StagedFailure("reserva", exc.etapa, str(exc), {"rodada": rodada, **exc.detalhes}) from exc
        reservas.append(reserva)
        if not reserva.reserved_colours:
            break
        nucleo = reserva.core

    d = delta0 * n / 2
    try:
        caminhos = rainbow_path_system(nucleo, d)
    except InputError as exc:
        raise StagedFailure(
            "sistema_de_caminhos",
            "hipotese",
            str(exc),
            {"reservas": len(reservas), "cores_nucleo": len(nucleo.colours)},
        ) from exc

    sistema = close_path_system(G, reservas, caminhos)
    sistema.notes.update({"threshold": limiar, "reservations": len(reservas)})
    return sistema


def close_path_system(
    G: EdgeColouredMultigraph, reservations: Sequence[Reservation], paths: RainbowPathSystem
) -> CycleSystem:
    """
    Fecha cada caminho longo com a sua reserva e so depois emparelha as cores que sobraram,
    fora dos caminhos, dos ciclos e de todo vertice reservado.
    """
    longos = [p for p in paths.paths if len(p) >= 3]
    curtos = [p for p in paths.paths if len(p) == 2]
    if len(longos) > len(reservations):
        raise StagedFailure(
            "fechamento",
            "reservas_insuficientes",
            f"{len(longos)} caminhos longos para {len(reservations)} reservas",
            {"caminhos": len(longos), "reservas": len(reservations)},
        )

    ciclos: List[RainbowCycle] = []
    for indice, P in enumerate(longos):
        outros = {v for Q in paths.paths if Q is not P for v in Q.vertices}
        outros |= {v for c in ciclos for v in c.vertices}
        outros |= {v for i, R in enumerate(reservations) if i != indice for v in R.reserved_vertices}
        try:
            ciclo = reservations[indice].close(P, outros)
        except (StepFailure, InputError) as exc:
            raise StagedFailure("fechamento", f"caminho_{indice}", str(exc), {"path": P.to_dict()}) from exc
        ciclos.append(ciclo)

    arestas = [MultiEdge(p.vertices[0], p.vertices[1], p.colours[0]) for p in curtos]
    usadas = {c for c in paths.colour_usage} | {c for ciclo in ciclos for c in ciclo.colours}
    restantes = set(G.colours) - usadas
    ocupados = paths.vertices() | {v for c in ciclos for v in c.vertices}
    ocupados |= {v for R in reservations for v in R.reserved_vertices}
    if restantes:
        try:
            arestas += greedy_rainbow_matching(G.without_vertices(ocupados), restantes)
        except InputError as exc:
            raise StagedFailure(
                "emparelhamento", "hipotese", str(exc), {"cores": len(restantes), "ocupados": len(ocupados)}
            ) from exc

    sistema = CycleSystem(ciclos, arestas, "absorption", {"reservations": len(reservations)})
    veredito = verify_rainbow_cycle_system(G, sistema)
    garantir(veredito.ok, "sistema de ciclos reprovado", veredito=veredito.to_dict())
    log_etapa("sistema_de_ciclos", ramo="absorption", componentes=sistema.count, reservas=len(reservations))
    return sistema
