#!/usr/bin/env python3
"""
Busca de ciclos apertados, cobertura monocromatica gulosa, ciclo triangular,
instancia de cota inferior e calculadora da cota polinomial.

Resumo do fluxo:
1. `iter_tight_cycles` enumera ciclos apertados por DFS sobre janelas parciais,
   usando o indice de (k-1)-faces do grafo e podando pelo numero de vertices livres.
2. `find_tight_cycle` devolve o primeiro ciclo encontrado, `not_found` (ausencia
   definitiva) ou `budget` (orcamento de nos esgotado, inconclusivo).
3. `greedy_mono_cover` repete: escolhe a cor com mais arestas nos vertices restantes,
   procura o ciclo monocromatico mais longo com comprimento multiplo de k e o remove.
4. `build_triangle_cycle` / `verify_triangle_cycle` montam e checam o absorvedor.
5. `lower_bound_instance` e `theorem_bound` cobrem a construcao de r classes e a formula.

Dependencias:
    python >= 3.9
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from decimal import ROUND_CEILING, Context, Decimal
from itertools import combinations, permutations
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple

from configuracao import AMOSTRAS_TRIANGULO, LIMITE_TRIANGULO_EXAUSTIVO, orcamento_padrao, rng_para
from falhas import BudgetExhausted, InputError, garantir
from modelo_hipergrafo import (
    ColouredKGraph,
    TightCycle,
    TightPath,
    Verdict,
    verify_tight_cycle,
    verify_tight_path,
)
from registro import log_etapa

CONVENCAO_LOG = "log natural; teto aplicado ao termo nao inteiro"

# --------------------------------------------------------------------------------------
# Busca exaustiva com orcamento
# --------------------------------------------------------------------------------------


class NodeCounter:
    """Contador de nos compartilhavel entre buscas; estoura `BudgetExhausted` no limite."""

    def __init__(self, limit: Optional[int] = None):
        self.limit = limit
        self.nodes = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.limit is not None and self.nodes > self.limit:
            raise BudgetExhausted(f"orcamento de {self.limit} nos esgotado", nodes=self.nodes)


@dataclass
class SearchResult:
    status: str  # found | not_found | budget
    cycle: Optional[TightCycle] = None
    nodes: int = 0

    @property
    def found(self) -> bool:
        return self.status == "found"

    def to_dict(self) -> Dict[str, object]:
        return {
            "status": self.status,
            "cycle": self.cycle.to_dict() if self.cycle else None,
            "nodes": self.nodes,
        }


def iter_tight_cycles(
    H: ColouredKGraph,
    length: int,
    colour: Optional[int] = None,
    allowed: Optional[Set[int]] = None,
    counter: Optional[NodeCounter] = None,
) -> Iterator[TightCycle]:
    """
    Gera cada ciclo apertado de comprimento `length` exatamente duas vezes (uma por sentido),
    sempre comecando no menor vertice do ciclo.
    """
    k = H.k
    counter = counter or NodeCounter()
    permitidos = set(H.vertices) if allowed is None else set(allowed)

    def cor_ok(c: int) -> bool:
        return colour is None or c == colour

    def fecha(seq: List[int]) -> bool:
        L = len(seq)
        for i in range(L - k + 1, L):
            janela = seq[i:] + seq[: k - (L - i)]
            c = H.colour_of(janela)
            if c is None or not cor_ok(c):
                return False
        return True

    for v0 in sorted(permitidos):
        livres_total = sum(1 for v in permitidos if v > v0)
        if livres_total + 1 < length:
            break
        for edge in H.incidence.get(v0, ()):
            if not cor_ok(H.colour_map[edge]):
                continue
            resto = [v for v in edge if v != v0]
            if any(v < v0 or v not in permitidos for v in resto):
                continue
            for perm in permutations(resto):
                seq = [v0, *perm]
                usados = set(seq)
                yield from _estender(H, seq, usados, length, v0, permitidos, livres_total, cor_ok, fecha, counter)


def _estender(H, seq, usados, length, v0, permitidos, livres_total, cor_ok, fecha, counter):
    counter.tick()
    if len(seq) == length:
        if fecha(seq):
            yield TightCycle(tuple(seq))
        return
    faltam = length - len(seq)
    if faltam > livres_total - (len(seq) - 1):
        return
    face = tuple(sorted(seq[-(H.k - 1):]))
    for w, c in H.face_index.get(face, ()):
        if w <= v0 or w in usados or w not in permitidos or not cor_ok(c):
            continue
        seq.append(w)
        usados.add(w)
        yield from _estender(H, seq, usados, length, v0, permitidos, livres_total, cor_ok, fecha, counter)
        usados.discard(w)
        seq.pop()


def find_tight_cycle(
    H: ColouredKGraph,
    length: int,
    colour: Optional[int] = None,
    budget: Optional[int] = None,
    allowed: Optional[Set[int]] = None,
    counter: Optional[NodeCounter] = None,
) -> SearchResult:
    if length < H.k + 1:
        raise InputError(
            f"Comprimento {length} < k+1 = {H.k + 1}; ciclos degenerados sao montados direto pelo modelo."
        )
    if budget is not None and budget <= 0:
        raise InputError("Orcamento de nos deve ser positivo.")
    if counter is None:
        counter = NodeCounter(budget if budget is not None else orcamento_padrao())
    inicio = counter.nodes
    disponiveis = H.n if allowed is None else len(set(allowed))
    if length > disponiveis:
        return SearchResult("not_found", None, 0)
    try:
        for ciclo in iter_tight_cycles(H, length, colour, allowed, counter):
            return SearchResult("found", TightCycle(ciclo.order, False, colour), counter.nodes - inicio)
    except BudgetExhausted:
        return SearchResult("budget", None, counter.nodes - inicio)
    return SearchResult("not_found", None, counter.nodes - inicio)


def count_tight_cycles(H: ColouredKGraph, length: int, colour: Optional[int] = None) -> int:
    if length < H.k + 1:
        raise InputError(f"Comprimento {length} < k+1 = {H.k + 1}.")
    bruto = sum(1 for _ in iter_tight_cycles(H, length, colour))
    return bruto // 2


# --------------------------------------------------------------------------------------
# Cobertura gulosa
# --------------------------------------------------------------------------------------


@dataclass
class CoverReport:
    n: int
    k: int
    r: int
    epsilon: float
    cycles: List[TightCycle] = field(default_factory=list)
    leftover: List[int] = field(default_factory=list)
    steps: List[Dict[str, object]] = field(default_factory=list)
    inconclusive: bool = False
    stop_reason: str = ""
    nodes: int = 0

    @property
    def reference_count(self) -> float:
        """2r·ln(1/ε): so informativo, a garantia exige 1/n muito menor que ε."""
        return 2 * self.r * math.log(1 / self.epsilon)

    def to_dict(self) -> Dict[str, object]:
        return {
            "cycles": [c.to_dict() for c in self.cycles],
            "leftover": list(self.leftover),
            "steps": list(self.steps),
            "inconclusive": self.inconclusive,
            "stop_reason": self.stop_reason,
            "epsilon": self.epsilon,
            "reference_2r_log": round(self.reference_count, 6),
            "nodes": self.nodes,
            "n": self.n,
            "k": self.k,
            "r": self.r,
        }


def _comprimentos_multiplos(restantes: int, k: int) -> List[int]:
    maior = (restantes // k) * k
    return list(range(maior, 2 * k - 1, -k))


def greedy_mono_cover(H: ColouredKGraph, epsilon: float, budget: Optional[int] = None) -> CoverReport:
    if not 0 < epsilon < 1:
        raise InputError(f"epsilon deve estar em (0, 1) (recebido {epsilon}).")
    counter = NodeCounter(budget if budget is not None else orcamento_padrao())
    relatorio = CoverReport(H.n, H.k, H.r, epsilon)
    restantes = set(H.vertices)

    while True:
        if len(restantes) <= epsilon * H.n:
            relatorio.stop_reason = "epsilon"
            break
        contagem = {c: 0 for c in range(H.r)}
        for e, c in H.colouring:
            if restantes.issuperset(e):
                contagem[c] += 1
        ordem_cores = sorted((c for c in contagem if contagem[c] > 0), key=lambda c: (-contagem[c], c))

        achado: Optional[TightCycle] = None
        passo: Dict[str, object] = {}
        try:
            for cor in ordem_cores:
                for comprimento in _comprimentos_multiplos(len(restantes), H.k):
                    resultado = find_tight_cycle(H, comprimento, cor, allowed=restantes, counter=counter)
                    if resultado.status == "budget":
                        raise BudgetExhausted(nodes=counter.nodes)
                    if resultado.found:
                        achado = TightCycle(resultado.cycle.order, False, cor)
                        passo = {
                            "colour": cor,
                            "length": comprimento,
                            "density": round(contagem[cor] / math.comb(len(restantes), H.k), 6),
                            "remaining_before": len(restantes),
                        }
                        break
                if achado:
                    break
        except BudgetExhausted:
            relatorio.inconclusive = True
            relatorio.stop_reason = "budget"
            break

        if achado is None:
            relatorio.stop_reason = "no_cycle"
            break
        antes = len(restantes)
        restantes -= achado.vertices
        garantir(antes - len(restantes) >= H.k + 1, "remocao de ciclo nao degenerado tirou menos de k+1 vertices")
        relatorio.cycles.append(achado)
        relatorio.steps.append(passo)
        log_etapa("cobertura.passo", **passo)

    relatorio.leftover = sorted(restantes)
    relatorio.nodes = counter.nodes
    return relatorio


def check_cover_report(H: ColouredKGraph, relatorio: CoverReport) -> Verdict:
    vistos: Set[int] = set()
    for ciclo in relatorio.cycles:
        if vistos & ciclo.vertices:
            return Verdict(False, ciclo.order, "ciclos nao disjuntos")
        vistos |= ciclo.vertices
        veredito = verify_tight_cycle(H, ciclo, colour=ciclo.colour, monochromatic=True)
        if not veredito:
            return Verdict(False, veredito.witness, f"ciclo invalido: {veredito.detail}")
    esperado = sorted(set(H.vertices) - vistos)
    if esperado != sorted(relatorio.leftover):
        return Verdict(False, sorted(relatorio.leftover), "sobra diferente de V menos os ciclos")
    return Verdict(True)


def cover_as_partition(H: ColouredKGraph, relatorio: CoverReport) -> List[TightCycle]:
    """Completa a cobertura com ciclos degenerados de ate k vertices."""
    particao = list(relatorio.cycles)
    sobra = sorted(relatorio.leftover)
    for i in range(0, len(sobra), H.k):
        particao.append(TightCycle(tuple(sobra[i:i + H.k]), degenerate=True))
    return particao


def check_partition(H: ColouredKGraph, partes: Sequence[TightCycle]) -> Verdict:
    """Partes disjuntas cobrindo V; degeneradas com ate k vertices, as demais monocromaticas."""
    vistos: Set[int] = set()
    for parte in partes:
        if vistos & parte.vertices:
            return Verdict(False, parte.order, "partes nao disjuntas")
        vistos |= parte.vertices
        if parte.degenerate:
            if len(parte) > H.k:
                return Verdict(False, parte.order, f"parte degenerada com mais de k={H.k} vertices")
            continue
        veredito = verify_tight_cycle(H, parte, colour=parte.colour, monochromatic=True)
        if not veredito:
            return Verdict(False, veredito.witness, f"parte invalida: {veredito.detail}")
    faltando = sorted(set(H.vertices) - vistos)
    if faltando:
        return Verdict(False, faltando, "vertices sem parte")
    return Verdict(True, extras={"parts": len(partes)})


# --------------------------------------------------------------------------------------
# Ciclo triangular
# --------------------------------------------------------------------------------------


@dataclass
class TriangleCycle:
    k: int
    t: int
    graph: ColouredKGraph

    @property
    def m(self) -> int:
        return (self.k - 1) * self.t

    @property
    def a(self) -> Tuple[int, ...]:
        return tuple(range(self.m))

    @property
    def b(self) -> Tuple[int, ...]:
        return tuple(range(self.m, self.m + self.t))

    def a_(self, indice: int) -> int:
        """a_i com indice 1-based tomado modulo m em {1..m}."""
        return (indice - 1) % self.m

    def b_(self, i: int) -> int:
        return self.m + i - 1

    def base_cycle(self) -> TightCycle:
        return TightCycle(self.a)

    def insertion_path(self, i: int) -> TightPath:
        k = self.k
        antes = [self.a_((k - 1) * i - (k - 2) + j) for j in range(k - 1)]
        depois = [self.a_((k - 1) * i + 1 + j) for j in range(k - 1)]
        return TightPath(tuple(antes + [self.b_(i)] + depois))

    def witness_cycle(self, removidos: Set[int]) -> TightCycle:
        """b_i entra logo apos a_{(k-1)i} para todo b_i fora de `removidos`."""
        ordem: List[int] = []
        for j in range(1, self.m + 1):
            ordem.append(self.a_(j))
            if j % (self.k - 1) == 0:
                i = j // (self.k - 1)
                if self.b_(i) not in removidos:
                    ordem.append(self.b_(i))
        return TightCycle(tuple(ordem))


def build_triangle_cycle(k: int, t: int) -> TriangleCycle:
    if k < 3 or t < 2 or (k - 1) * t < k + 1:
        raise InputError(f"Parametros invalidos para o ciclo triangular: k={k}, t={t} (exige k>=3, t>=2).")
    m = (k - 1) * t
    arestas: Set[Tuple[int, ...]] = set()
    for i in range(m):
        arestas.add(tuple(sorted((i + j) % m for j in range(k))))
    esqueleto = TriangleCycle(k, t, ColouredKGraph(k, m + t, 1, []))
    for i in range(1, t + 1):
        caminho = esqueleto.insertion_path(i).order
        for s in range(len(caminho) - k + 1):
            arestas.add(tuple(sorted(caminho[s:s + k])))
    return TriangleCycle(k, t, ColouredKGraph(k, m + t, 1, [(e, 0) for e in sorted(arestas)]))


def _subconjuntos_absorvedores(T: TriangleCycle, semente: int):
    if T.t <= LIMITE_TRIANGULO_EXAUSTIVO:
        for tamanho in range(T.t + 1):
            for sub in combinations(T.b, tamanho):
                yield set(sub)
        return
    rng = rng_para(semente, "triangulo", T.k, T.t)
    for _ in range(AMOSTRAS_TRIANGULO):
        yield {b for b in T.b if rng.random() < 0.5}


def verify_triangle_cycle(T: TriangleCycle, semente: int = 0, budget: Optional[int] = None) -> Verdict:
    """Orcamento esgotado na busca de reserva devolve veredito inconclusivo (extras["inconclusive"])."""
    H = T.graph
    amostrado = T.t > LIMITE_TRIANGULO_EXAUSTIVO
    extras = {"sampled": amostrado}

    base = verify_tight_cycle(H, T.base_cycle())
    if not base:
        return Verdict(False, base.witness, "ciclo base a_1..a_m nao e apertado", extras)

    for i in range(1, T.t + 1):
        veredito = verify_tight_path(H, T.insertion_path(i))
        if not veredito:
            return Verdict(False, veredito.witness, f"caminho de insercao de b_{i} falhou", extras)

    delta = H.max_degree()
    extras["max_degree"] = delta
    if delta != 2 * T.k:
        return Verdict(False, delta, f"grau maximo {delta} != 2k = {2 * T.k}", extras)

    verificados = 0
    for removidos in _subconjuntos_absorvedores(T, semente):
        restantes = set(H.vertices) - removidos
        candidato = T.witness_cycle(removidos)
        if not verify_tight_cycle(H, candidato):
            busca = find_tight_cycle(H, len(restantes), budget=budget, allowed=restantes)
            if busca.status == "budget":
                extras.update(inconclusive=True, subsets_checked=verificados)
                return Verdict(False, sorted(removidos), "inconclusivo: orcamento esgotado apos remover B'", extras)
            if not busca.found:
                return Verdict(False, sorted(removidos), "sem ciclo apertado apos remover B'", extras)
        verificados += 1
    extras["subsets_checked"] = verificados
    return Verdict(True, extras=extras)


# --------------------------------------------------------------------------------------
# Cota inferior e calculadora
# --------------------------------------------------------------------------------------


def minimal_sizes(k: int, r: int) -> List[int]:
    tamanhos: List[int] = []
    for _ in range(r):
        tamanhos.append((k - 1) * sum(tamanhos) + 1)
    return tamanhos


def lower_bound_instance(k: int, r: int, sizes: Optional[Sequence[int]] = None) -> ColouredKGraph:
    """K_n^(k) com a cor de cada aresta igual ao menor indice de classe que ela toca."""
    if k < 2 or r < 1:
        raise InputError(f"Exige k >= 2 e r >= 1 (recebido k={k}, r={r}).")
    tamanhos = list(sizes) if sizes is not None else minimal_sizes(k, r)
    if len(tamanhos) != r:
        raise InputError(f"Esperado {r} tamanhos de classe, recebido {len(tamanhos)}.")
    if tamanhos[0] < 1:
        raise InputError("|V_1| deve ser nao vazio.")
    for i in range(1, r):
        limite = (k - 1) * sum(tamanhos[:i])
        if tamanhos[i] <= limite:
            raise InputError(
                f"|V_{i + 1}| = {tamanhos[i]} viola |V_i| > (k-1)·Σ_(j<i)|V_j| = {limite}."
            )
    classe: List[int] = []
    for i, tamanho in enumerate(tamanhos):
        classe.extend([i] * tamanho)
    n = len(classe)
    arestas = [(e, min(classe[v] for v in e)) for e in combinations(range(n), k)]
    return ColouredKGraph(k, n, r, arestas)


def theorem_bound(k: int, r: int) -> int:
    """(2r)^(2^(k+4)) + ⌈2^(k+8)·r·ln(2r)⌉ em aritmetica exata."""
    if r < 1 or k < 3:
        raise InputError(f"Exige r >= 1 e k >= 3 (recebido k={k}, r={r}).")
    ctx = Context(prec=50)
    termo = ctx.multiply(Decimal(2 ** (k + 8) * r), ctx.ln(Decimal(2 * r)))
    teto = int(termo.to_integral_value(rounding=ROUND_CEILING))
    return (2 * r) ** (2 ** (k + 4)) + teto


def theorem_bound_report(k: int, r: int) -> Dict[str, object]:
    valor = theorem_bound(k, r)
    return {"k": k, "r": r, "bound": str(valor), "bits": valor.bit_length(), "convention": CONVENCAO_LOG}
