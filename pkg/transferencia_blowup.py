#!/usr/bin/env python3
"""
Ponte entre k-grafos k-partidos e multigrafos com arestas coloridas.

Resumo do fluxo:
1. `count_k2_blowups` conta copias de K_k^(k)(2) exatamente (mascaras de bits sobre a
   ultima classe) e confere a cota de Cauchy-Schwarz e os momentos f(j).
2. `clean_to_robust_subgraph` apaga copias ate cada aresta sobrevivente estar em
   >= γn^k/2 copias (ponto fixo, independe da ordem).
3. `permutation_slice` mede arestas horizontais sob permutacoes; `colour_slice` fatia
   as classes por cor majoritaria.
4. `build_respecting_multigraph` monta G^j que respeita H^j e guarda a testemunha;
   `rainbow_cycle_to_tight_cycle` converte ciclos arco-iris de G em ciclos apertados de H.
5. `respecting_pairs` encadeia tudo e confere A1-A4.

Dependencias:
    python >= 3.9 (apenas biblioteca padrao alem dos modulos do projeto)
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from configuracao import TENTATIVAS_ALEATORIAS, derivar_semente, rng_para
from falhas import InputError, StepFailure, garantir
from modelo_hipergrafo import (
    ColouredKGraph,
    EdgeColouredMultigraph,
    MultiEdge,
    RainbowCycle,
    TightCycle,
    Verdict,
    degree_profile,
    verify_rainbow_cycle,
    verify_tight_cycle,
)
from registro import log_etapa


def _popcount(mascara: int) -> int:
    return bin(mascara).count("1")


def _fracao(valor) -> Fraction:
    return Fraction(str(valor)) if isinstance(valor, float) else Fraction(valor)


# --------------------------------------------------------------------------------------
# Modelos de dados
# --------------------------------------------------------------------------------------


@dataclass(frozen=True)
class KPartiteGraph:
    """Arestas como tuplas em ordem de classe: e[i] pertence a classes[i]."""

    classes: Tuple[Tuple[int, ...], ...]
    edges: FrozenSet[Tuple[int, ...]] = frozenset()

    def __post_init__(self) -> None:
        classes = tuple(tuple(int(v) for v in c) for c in self.classes)
        vistos = set()
        for i, classe in enumerate(classes):
            if vistos & set(classe) or len(set(classe)) != len(classe):
                raise InputError(f"Classe {i + 1} repete vertices ou intersecta outra classe.")
            vistos |= set(classe)
        arestas = frozenset(tuple(int(v) for v in e) for e in self.edges)
        conjuntos = [set(c) for c in classes]
        for e in arestas:
            if len(e) != len(classes) or any(v not in conjuntos[i] for i, v in enumerate(e)):
                raise InputError(f"Aresta {e} nao tem um vertice por classe na ordem das classes.")
        object.__setattr__(self, "classes", classes)
        object.__setattr__(self, "edges", arestas)

    @property
    def k(self) -> int:
        return len(self.classes)

    @property
    def n(self) -> int:
        tamanhos = {len(c) for c in self.classes}
        if len(tamanhos) != 1:
            raise InputError(f"Classes com tamanhos diferentes: {sorted(len(c) for c in self.classes)}.")
        return tamanhos.pop()

    def __len__(self) -> int:
        return len(self.edges)

    @cached_property
    def posicoes(self) -> List[Dict[int, int]]:
        return [{v: i for i, v in enumerate(c)} for c in self.classes]

    @cached_property
    def mascaras(self) -> Dict[Tuple[int, ...], int]:
        """Posicoes das k-1 primeiras coordenadas -> bits das posicoes na ultima classe."""
        mapa: Dict[Tuple[int, ...], int] = {}
        for e in self.edges:
            chave = tuple(self.posicoes[i][v] for i, v in enumerate(e[:-1]))
            mapa[chave] = mapa.get(chave, 0) | (1 << self.posicoes[-1][e[-1]])
        return mapa

    def link(self, z: int) -> "KPartiteGraph":
        if z not in self.posicoes[-1]:
            raise InputError(f"{z} nao esta na ultima classe.")
        return KPartiteGraph(self.classes[:-1], frozenset(e[:-1] for e in self.edges if e[-1] == z))

    def with_edges(self, edges: Iterable[Tuple[int, ...]]) -> "KPartiteGraph":
        return KPartiteGraph(self.classes, frozenset(edges))

    @classmethod
    def from_kgraph(
        cls, H: ColouredKGraph, classes: Sequence[Sequence[int]], colour: Optional[int] = None
    ) -> "KPartiteGraph":
        classe_de = {v: i for i, c in enumerate(classes) for v in c}
        arestas = []
        for e, cor in H.colouring:
            if colour is not None and cor != colour:
                continue
            indices = [classe_de.get(v) for v in e]
            if None in indices or len(set(indices)) != len(classes):
                continue
            ordenada = [0] * len(classes)
            for v, i in zip(e, indices):
                ordenada[i] = v
            arestas.append(tuple(ordenada))
        return cls(tuple(tuple(c) for c in classes), frozenset(arestas))

    def to_dict(self) -> Dict[str, object]:
        return {"classes": [list(c) for c in self.classes], "edges": sorted(list(e) for e in self.edges)}


def complete_kpartite(k: int, n: int) -> KPartiteGraph:
    classes = tuple(tuple(range(i * n, (i + 1) * n)) for i in range(k))
    return KPartiteGraph(classes, frozenset(product(*classes)))


def random_kpartite(k: int, n: int, density: float, semente: int) -> KPartiteGraph:
    rng = rng_para(semente, "kpartido", k, n, density)
    classes = tuple(tuple(range(i * n, (i + 1) * n)) for i in range(k))
    return KPartiteGraph(classes, frozenset(e for e in product(*classes) if rng.random() < density))


# --------------------------------------------------------------------------------------
# Contagem de K_k^(k)(2)
# --------------------------------------------------------------------------------------


def _intersecao(H: KPartiteGraph, pares: Sequence[Tuple[int, int]]) -> int:
    mascara = (1 << len(H.classes[-1])) - 1
    for escolha in product(*pares):
        mascara &= H.mascaras.get(escolha, 0)
        if not mascara:
            break
    return mascara


def _copias(H: KPartiteGraph) -> Iterator[Tuple[Tuple[int, int], ...]]:
    """Cada copia como um par de posicoes por classe."""
    n = len(H.classes[0]) if H.classes else 0
    for pares in product(combinations(range(n), 2), repeat=H.k - 1):
        mascara = _intersecao(H, pares)
        bits = [i for i in range(len(H.classes[-1])) if mascara >> i & 1]
        for par_z in combinations(bits, 2):
            yield (*pares, par_z)


def _arestas_da_copia(H: KPartiteGraph, copia: Tuple[Tuple[int, int], ...]) -> List[Tuple[int, ...]]:
    return [tuple(H.classes[i][p] for i, p in enumerate(escolha)) for escolha in product(*copia)]


def _momento(H: KPartiteGraph, j: int) -> int:
    """f(j): j ultimas classes em pares ordenados (com repeticao), demais simples."""
    n, k = H.n, H.k
    if j == 0:
        return len(H)
    total = 0
    for simples in product(range(n), repeat=k - j):
        for pares in product(product(range(n), repeat=2), repeat=j - 1):
            mascara = _intersecao(H, [(p,) for p in simples] + list(pares))
            total += _popcount(mascara) ** 2
    return total


@dataclass
class BlowupCount:
    count: int
    ordered: int
    cs_bound: Fraction
    meets_bound: bool
    moments: List[int] = field(default_factory=list)
    moment_checks: List[bool] = field(default_factory=list)

    def to_dict(self) -> Dict[str, object]:
        return {
            "count": self.count,
            "ordered": self.ordered,
            "cs_bound": self.cs_bound,
            "meets_bound": self.meets_bound,
            "moments": list(self.moments),
            "moment_checks": list(self.moment_checks),
        }


def count_k2_blowups(H: KPartiteGraph, moments: bool = True) -> BlowupCount:
    n, k = H.n, H.k
    if k < 2:
        raise InputError("count_k2_blowups exige k >= 2.")
    nao_ordenado = 0
    for pares in product(combinations(range(n), 2), repeat=k - 1):
        nao_ordenado += math.comb(_popcount(_intersecao(H, pares)), 2)
    ordenado = nao_ordenado * 2 ** k
    cota = Fraction(len(H) ** (2 ** k), n ** (k * 2 ** k - 2 * k)) - k * n ** (2 * k - 1)
    resultado = BlowupCount(nao_ordenado, ordenado, cota, ordenado >= cota)
    garantir(resultado.meets_bound, "contagem abaixo da cota de Cauchy-Schwarz", ordenado=ordenado, cota=str(cota))
    if moments:
        resultado.moments = [_momento(H, j) for j in range(k + 1)]
        f0 = resultado.moments[0]
        for t in range(1, k + 1):
            ok = n ** (2 ** t * k - k - t) * resultado.moments[t] >= f0 ** (2 ** t)
            resultado.moment_checks.append(ok)
            garantir(ok, "desigualdade de momentos violada", t=t)
    return resultado


# --------------------------------------------------------------------------------------
# Limpeza
# --------------------------------------------------------------------------------------


@dataclass
class CleaningResult:
    subgraph: KPartiteGraph
    copies: int
    threshold: Fraction
    rounds: int

    @property
    def empty(self) -> bool:
        return len(self.subgraph) == 0

    def to_dict(self) -> Dict[str, object]:
        return {
            "edges": len(self.subgraph),
            "copies": self.copies,
            "threshold": self.threshold,
            "rounds": self.rounds,
            "empty": self.empty,
        }


def clean_to_robust_subgraph(H: KPartiteGraph, gamma, semente: Optional[int] = None) -> CleaningResult:
    """
    Enquanto alguma aresta estiver em menos de γn^k/2 copias sobreviventes, apaga essas
    copias. `semente` embaralha a ordem de processamento (o resultado nao muda).
    """
    n, k = H.n, H.k
    limiar = _fracao(gamma) * n ** k / 2
    copias = [frozenset(_arestas_da_copia(H, c)) for c in _copias(H)]
    vivas = set(range(len(copias)))
    por_aresta: Dict[Tuple[int, ...], set] = {}
    for indice, copia in enumerate(copias):
        for e in copia:
            por_aresta.setdefault(e, set()).add(indice)

    ordem = sorted(por_aresta)
    if semente is not None:
        rng_para(semente, "limpeza").shuffle(ordem)
    rodadas = 0
    mudou = True
    while mudou:
        mudou = False
        rodadas += 1
        for e in ordem:
            restantes = por_aresta[e] & vivas
            if restantes and len(restantes) < limiar:
                vivas -= restantes
                mudou = True

    arestas = {e for e in ordem if por_aresta[e] & vivas}
    H0 = H.with_edges(arestas)
    for e in arestas:
        garantir(len(por_aresta[e] & vivas) >= limiar, "aresta de H0 com poucas copias", aresta=e)
    if arestas:
        garantir(len(arestas) * n ** k >= 2 ** k * len(vivas), "|E(H0)| abaixo de 2^k·copias/n^k")
    return CleaningResult(H0, len(vivas), limiar, rodadas)


# --------------------------------------------------------------------------------------
# Fatias
# --------------------------------------------------------------------------------------


def _horizontais(H: KPartiteGraph, sigmas: Sequence[Sequence[int]]) -> List[Tuple[int, ...]]:
    n = H.n
    achadas = []
    for i in range(n):
        e = tuple(H.classes[c][sigmas[c][i]] for c in range(H.k - 1)) + (H.classes[-1][i],)
        if e in H.edges:
            achadas.append(e)
    return achadas


@dataclass
class PermutationSlice:
    edges: List[Tuple[int, ...]]
    sigmas: List[List[int]]
    expectation: Fraction
    samples: List[int] = field(default_factory=list)

    @property
    def mean(self) -> Optional[float]:
        return statistics.fmean(self.samples) if self.samples else None

    @property
    def std_error(self) -> Optional[float]:
        if len(self.samples) < 2:
            return None
        return statistics.stdev(self.samples) / math.sqrt(len(self.samples))

    def within(self, erros_padrao: float = 3.0) -> Optional[bool]:
        if self.std_error is None:
            return None
        return abs(self.mean - float(self.expectation)) <= erros_padrao * self.std_error

    def histogram(self) -> Dict[int, int]:
        contagem: Dict[int, int] = {}
        for s in self.samples:
            contagem[s] = contagem.get(s, 0) + 1
        return dict(sorted(contagem.items()))

    def to_dict(self) -> Dict[str, object]:
        return {
            "edges": [list(e) for e in self.edges],
            "sigmas": self.sigmas,
            "expectation": self.expectation,
            "samples": len(self.samples),
            "mean": self.mean,
            "std_error": self.std_error,
            "within_3se": self.within(),
            "histogram": self.histogram(),
        }


def permutation_slice(
    H: KPartiteGraph,
    sigmas: Optional[Sequence[Sequence[int]]] = None,
    semente: Optional[int] = None,
    amostras: int = 0,
) -> PermutationSlice:
    n, k = H.n, H.k
    if sigmas is None:
        sigmas = [list(range(n)) for _ in range(k - 1)]
    if len(sigmas) != k - 1:
        raise InputError(f"Esperadas {k - 1} permutacoes, recebidas {len(sigmas)}.")
    for i, s in enumerate(sigmas):
        if sorted(s) != list(range(n)):
            raise InputError(f"sigma_{i + 1} nao e permutacao de 0..{n - 1}.")
    resultado = PermutationSlice(_horizontais(H, sigmas), [list(s) for s in sigmas], Fraction(len(H), n ** (k - 1)))
    if amostras:
        rng = rng_para(semente if semente is not None else 0, "permutacoes", k, n)
        for _ in range(amostras):
            sorteio = []
            for _ in range(k - 1):
                s = list(range(n))
                rng.shuffle(s)
                sorteio.append(s)
            resultado.samples.append(len(_horizontais(H, sorteio)))
    return resultado


@dataclass
class SlicedPartition:
    """classes[i][j] = X_{i+1}^j (j cor); leftover[i] = X_{i+1}^0; colour_classes[j] = X_k^j."""

    k: int
    r: int
    N: int
    size: int
    classes: List[Dict[int, List[int]]]
    leftover: List[List[int]]
    colour_classes: Dict[int, List[int]]
    counts: Dict[Tuple[int, int], int] = field(default_factory=dict)
    attempts: int = 0

    def to_dict(self) -> Dict[str, object]:
        return {
            "k": self.k,
            "r": self.r,
            "N": self.N,
            "size": self.size,
            "classes": [{str(j): v for j, v in c.items()} for c in self.classes],
            "leftover": self.leftover,
            "colour_classes": {str(j): v for j, v in self.colour_classes.items()},
            "counts": [[j, z, c] for (j, z), c in sorted(self.counts.items())],
            "attempts": self.attempts,
        }


def _e_cor(H: ColouredKGraph, partes: Sequence[Sequence[int]], z: int, cor: int) -> int:
    return sum(1 for escolha in product(*partes) if H.colour_of((*escolha, z)) == cor)


def sliced_size(k: int, r: int, N: int) -> int:
    return math.floor((1 - Fraction(1, 4 * k * r ** k)) * Fraction(N, r))


def check_sliced_partition(H: ColouredKGraph, classes: Sequence[Sequence[int]], sp: SlicedPartition) -> Verdict:
    for i, original in enumerate(classes[:-1]):
        pedacos = [v for j in range(sp.r) for v in sp.classes[i].get(j, [])] + list(sp.leftover[i])
        if sorted(pedacos) != sorted(original):
            return Verdict(False, i, f"X_{i + 1} nao e particionado pelas fatias")
        for j in range(sp.r):
            if len(sp.classes[i].get(j, [])) != sp.size:
                return Verdict(False, (i, j), f"|X_{i + 1}^{j}| != {sp.size}")
    fatias_z = [v for j in range(sp.r) for v in sp.colour_classes.get(j, [])]
    if sorted(fatias_z) != sorted(classes[-1]):
        return Verdict(False, "Xk", "X_k nao e particionado pelas cores")
    for j in range(sp.r):
        partes = [sp.classes[i][j] for i in range(sp.k - 1)]
        minimo = Fraction(math.prod(len(p) for p in partes), 2 * sp.r)
        for z in sp.colour_classes.get(j, []):
            e = _e_cor(H, partes, z, j)
            if e < minimo:
                return Verdict(False, (j, z), f"e_{j}(fatias, {z}) = {e} < {minimo}")
    return Verdict(True)


def colour_slice(H: ColouredKGraph, classes: Sequence[Sequence[int]], semente: int = 0) -> SlicedPartition:
    k, r = H.k, H.r
    if len(classes) != k:
        raise InputError(f"Esperadas {k} classes, recebidas {len(classes)}.")
    N = len(classes[0])
    if any(len(c) != N for c in classes[:-1]) or len(classes[-1]) > N:
        raise InputError("colour_slice exige |X_1| = ... = |X_{k-1}| = N e |X_k| <= N.")
    for e in product(*classes):
        if H.colour_of(e) is None:
            raise InputError(f"Hospedeiro nao e k-partido completo: falta {tuple(sorted(e))}.")

    cores_z: Dict[int, List[int]] = {j: [] for j in range(r)}
    for z in classes[-1]:
        contagem = [_e_cor(H, classes[:-1], z, j) for j in range(r)]
        cores_z[max(range(r), key=lambda j: (contagem[j], -j))].append(z)

    tamanho = sliced_size(k, r, N)
    rng = rng_para(semente, "fatiamento", k, r, N)
    melhor: Optional[Tuple[Fraction, SlicedPartition, Dict]] = None
    for tentativa in range(1, TENTATIVAS_ALEATORIAS + 1):
        fatias: List[Dict[int, List[int]]] = []
        sobras: List[List[int]] = []
        for classe in classes[:-1]:
            embaralhada = list(classe)
            rng.shuffle(embaralhada)
            distribuicao = {j: embaralhada[j::r] for j in range(r)}
            fatias.append({j: sorted(v[:tamanho]) for j, v in distribuicao.items()})
            sobras.append(sorted(v for j in range(r) for v in distribuicao[j][tamanho:]))
        contagens: Dict[Tuple[int, int], int] = {}
        pior: Optional[Fraction] = None
        deficits: Dict[str, int] = {}
        for j in range(r):
            partes = [fatias[i][j] for i in range(k - 1)]
            minimo = Fraction(math.prod(len(p) for p in partes), 2 * r)
            for z in cores_z[j]:
                e = _e_cor(H, partes, z, j)
                contagens[(j, z)] = e
                razao = Fraction(e) / minimo if minimo else Fraction(1)
                pior = razao if pior is None else min(pior, razao)
                if e < minimo:
                    deficits[f"{j}:{z}"] = e
        sp = SlicedPartition(k, r, N, tamanho, fatias, sobras, cores_z, contagens, tentativa)
        if not deficits:
            log_etapa("fatiamento_cores", tentativas=tentativa, tamanho=tamanho)
            return sp
        if melhor is None or (pior is not None and pior > melhor[0]):
            melhor = (pior, sp, deficits)
    raise StepFailure(
        "fatiamento",
        f"nenhuma das {TENTATIVAS_ALEATORIAS} tentativas atinge e_j >= Π|X_i^j|/(2r)",
        {"deficits": melhor[2], "melhor_razao": str(melhor[0])},
    )


# --------------------------------------------------------------------------------------
# Relacao "respeita"
# --------------------------------------------------------------------------------------


@dataclass
class RespectsWitness:
    """
    G sobre {v_0..v_{n-1}}; a aresta v_i v_i' de cor z exige que
    {X_c[i], X_c[i'] : c < k-1} forme K_{k-1}^{(k-1)}(2) no link de z em H (na cor `colour`).
    `classes` ja estao reordenadas (σ = id); `permutations` guarda a reordenacao aplicada.
    """

    host: ColouredKGraph
    colour: int
    classes: List[List[int]]
    colour_class: List[int]
    graph: EdgeColouredMultigraph
    permutations: List[List[int]] = field(default_factory=list)

    @property
    def n(self) -> int:
        return len(self.classes[0]) if self.classes else 0

    def edge_witness(self, aresta: MultiEdge) -> Tuple[int, ...]:
        return tuple(sorted(v for c in self.classes for v in (c[aresta.u], c[aresta.v])))

    def to_dict(self) -> Dict[str, object]:
        return {
            "tipo": "RespectsWitness",
            "host": self.host.to_dict(),
            "colour": self.colour,
            "classes": self.classes,
            "colour_class": self.colour_class,
            "graph": self.graph.to_dict(),
            "permutations": self.permutations,
            "edge_witnesses": [list(self.edge_witness(a)) for a in self.graph.edges],
        }

    @classmethod
    def from_dict(cls, dados: Mapping[str, object]) -> "RespectsWitness":
        try:
            return cls(
                host=ColouredKGraph.from_dict(dados["host"]),
                colour=int(dados["colour"]),
                classes=[[int(v) for v in c] for c in dados["classes"]],
                colour_class=[int(z) for z in dados["colour_class"]],
                graph=EdgeColouredMultigraph.from_dict(dados["graph"]),
                permutations=[[int(v) for v in p] for p in dados.get("permutations", [])],
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"RespectsWitness invalido: {exc}") from exc


def _classes_disjuntas(W: RespectsWitness) -> bool:
    todos = [v for c in W.classes for v in c] + list(W.colour_class)
    return len(set(todos)) == len(todos) and all(len(c) == W.n for c in W.classes)


def verify_respects(W: RespectsWitness) -> Verdict:
    """Refaz, direto de H, a condicao K_{k-1}^{(k-1)}(2) de cada aresta de G."""
    zs = set(W.colour_class)
    for indice, a in enumerate(W.graph.edges):
        if a.colour not in zs:
            return Verdict(False, (a.u, a.v, a.colour), "cor de G fora da classe de cores")
        if not (0 <= a.u < W.n and 0 <= a.v < W.n):
            return Verdict(False, (a.u, a.v, a.colour), "vertice de G fora de {v_i}")
        for escolha in product(*[(c[a.u], c[a.v]) for c in W.classes]):
            if W.host.colour_of((*escolha, a.colour)) != W.colour:
                return Verdict(False, (a.u, a.v, a.colour), f"falta a aresta {tuple(sorted((*escolha, a.colour)))}")
    return Verdict(True, extras={"edges": len(W.graph.edges)})


def build_respecting_multigraph(
    H: ColouredKGraph,
    classes: Sequence[Sequence[int]],
    colour_class: Sequence[int],
    colour: int,
    gamma=None,
    semente: int = 0,
) -> Tuple[EdgeColouredMultigraph, RespectsWitness]:
    k = H.k
    if len(classes) != k - 1:
        raise InputError(f"Esperadas {k - 1} classes alem da classe de cores.")
    n = len(classes[0])
    if any(len(c) != n for c in classes):
        raise InputError("Classes X_1^j..X_{k-1}^j precisam ter o mesmo tamanho.")
    d = Fraction(1, 2 * H.r)
    gamma = _fracao(gamma) if gamma is not None else d ** (2 ** k) / 2
    base = KPartiteGraph.from_kgraph(H, [*classes, list(colour_class)], colour)

    limpos: Dict[int, KPartiteGraph] = {}
    for z in colour_class:
        link = base.link(z)
        if len(link) < d * n ** (k - 1):
            raise StepFailure("link", f"link de {z} tem {len(link)} < dn^(k-1) arestas", {"z": z, "d": str(d)})
        limpo = clean_to_robust_subgraph(link, gamma)
        if limpo.empty:
            raise StepFailure("limpeza", f"J^z vazio para z={z}", {"z": z, "limiar": str(limpo.threshold)})
        limpos[z] = limpo.subgraph

    limiar = gamma * Fraction(2) ** (k - 3) * n
    rng = rng_para(semente, "respeito", colour, k, n)
    escolhidas: Optional[List[List[int]]] = None
    falha = None
    for _ in range(TENTATIVAS_ALEATORIAS):
        sigmas = []
        for _ in range(k - 2):
            s = list(range(n))
            rng.shuffle(s)
            sigmas.append(s)
        falha = None
        for z in colour_class:
            horizontais = _horizontais(limpos[z], sigmas)
            if len(horizontais) < limiar:
                falha = (z, len(horizontais))
                break
        if falha is None:
            escolhidas = sigmas
            break
    if escolhidas is None:
        raise StepFailure(
            "permutacao",
            f"|J^z_σ| < γ2^(k-3)n = {float(limiar):.4g} em todas as tentativas",
            {"z": falha[0], "horizontais": falha[1]},
        )

    reordenadas = [[c[p] for p in escolhidas[i]] for i, c in enumerate(classes[:-1])] + [list(classes[-1])]
    arestas: List[MultiEdge] = []
    for z in colour_class:
        J = limpos[z]
        for i, i2 in combinations(range(n), 2):
            pares = [(c[i], c[i2]) for c in reordenadas]
            if all(escolha in J.edges for escolha in product(*pares)):
                arestas.append(MultiEdge(i, i2, z))
    G = EdgeColouredMultigraph(n, tuple(arestas))
    W = RespectsWitness(H, colour, reordenadas, list(colour_class), G, escolhidas)
    log_etapa("multigrafo_respeitoso", cor=colour, n=n, arestas=len(arestas), cores=len(G.colours))
    return G, W


def rainbow_cycle_to_tight_cycle(W: RespectsWitness, C: RainbowCycle) -> TightCycle:
    """
    O bloco j e (X_1[v_j], ..., X_{k-1}[v_j], c_j), com c_j a cor da aresta v_j v_(j+1)
    (tambem na volta v_l v_1); o ciclo apertado e a concatenacao dos blocos.
    """
    veredito = verify_rainbow_cycle(W.graph, C)
    if not veredito:
        raise InputError(f"Ciclo nao e arco-iris em G: {veredito.detail} ({veredito.witness})")
    zs = set(W.colour_class)
    for j, cor in enumerate(C.colours):
        if cor not in zs:
            raise InputError(f"Cor de indice {j} ({cor!r}) nao pertence a classe de cores.")
    ordem: List[int] = []
    for v, cor in zip(C.vertices, C.colours):
        ordem.extend(c[v] for c in W.classes)
        ordem.append(cor)
    ciclo = TightCycle(tuple(ordem), colour=W.colour)
    checagem = verify_tight_cycle(W.host, ciclo, W.colour)
    garantir(bool(checagem), "conversao arco-iris -> apertado invalida", janela=checagem.witness)
    return ciclo


# --------------------------------------------------------------------------------------
# Cadeia completa
# --------------------------------------------------------------------------------------


@dataclass
class RespectingPairs:
    slices: SlicedPartition
    witnesses: Dict[int, RespectsWitness]
    checks: Dict[str, bool]
    delta_mon: Dict[int, Optional[int]]
    delta_mon_bound: Fraction

    def to_dict(self) -> Dict[str, object]:
        return {
            "slices": self.slices.to_dict(),
            "witnesses": {str(j): w.to_dict() for j, w in self.witnesses.items()},
            "checks": self.checks,
            "delta_mon": {str(j): d for j, d in self.delta_mon.items()},
            "delta_mon_bound": self.delta_mon_bound,
        }


def respecting_pairs(H: ColouredKGraph, X: Sequence[int], Z: Sequence[int], semente: int = 0, gamma=None) -> RespectingPairs:
    k, r = H.k, H.r
    if set(X) & set(Z):
        raise InputError("X e Z precisam ser disjuntos.")
    if len(X) < (k - 1) * len(Z):
        raise InputError(f"|X| = {len(X)} < (k-1)|Z| = {(k - 1) * len(Z)}.")
    m = len(X) // (k - 1)
    partes_x = [sorted(X)[i * m:(i + 1) * m] for i in range(k - 1)]
    sp = colour_slice(H, [*partes_x, list(Z)], derivar_semente(semente, "fatias"))

    testemunhas: Dict[int, RespectsWitness] = {}
    for j in range(r):
        if not sp.colour_classes[j]:
            continue
        _, W = build_respecting_multigraph(
            H,
            [sp.classes[i][j] for i in range(k - 1)],
            sp.colour_classes[j],
            j,
            gamma=gamma,
            semente=derivar_semente(semente, "cor", j),
        )
        testemunhas[j] = W

    cota = Fraction(1, (2 * r) ** (2 ** k)) * sp.size / 8
    delta_mon = {j: degree_profile(W.graph).delta_mon for j, W in testemunhas.items()}
    conj_x = set(X)
    vertices_por_cor = {j: {v for c in W.classes for v in c} | set(W.colour_class) for j, W in testemunhas.items()}
    checks = {
        "A1": all(_classes_disjuntas(W) for W in testemunhas.values()),
        "A2": all(set(W.graph.colours) == set(W.colour_class) for W in testemunhas.values())
        and sorted(z for j in range(r) for z in sp.colour_classes[j]) == sorted(Z)
        and all(v in conj_x for W in testemunhas.values() for c in W.classes for v in c),
        "A3": all(W.n == sp.size and bool(verify_respects(W)) for W in testemunhas.values()),
        "A4": all(
            not (vertices_por_cor[a] & vertices_por_cor[b]) for a, b in combinations(sorted(vertices_por_cor), 2)
        ),
    }
    log_etapa("pares_respeitosos", cores=sorted(testemunhas), checks=checks)
    return RespectingPairs(sp, testemunhas, checks, delta_mon, cota)
