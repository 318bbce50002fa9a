#!/usr/bin/env python3
"""
Emparelhamentos semi-densos e meio-densos, emparelhamento bipartido ancorado,
hub robusto em digrafos e o balanceador de emparelhamentos fracionarios.

Resumo do fluxo:
1. `find_semi_dense` segue a inducao em k: caso base em 2-grafos (classe de cor mais
   densa, componente conexa, emparelhamento maximo) e passo indutivo que monta o
   (k-1)-grafo de fronteira colorido por componentes apertadas, recursa e estende
   cada aresta com um vertice de W escolhido gulosamente.
2. `semi_to_half` converte um certificado semi-denso em meio-denso via o grafo
   bipartido auxiliar e `anchored_bipartite_matching`.
3. `robust_hub` e `choose_balancing_indices` escolhem I+/I- para o balanceador.
4. `balance_fractional_matching` empurra peso mu por caminhos M-aumentados curtos.

Toda garantia que depende de constantes assintoticas vira checagem registrada no
certificado; passos sem objetos suficientes levantam `StepFailure`.

Dependencias:
    python >= 3.9
    networkx (Hopcroft-Karp, fluxo maximo, caminhos simples, emparelhamento maximo)
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import combinations
from typing import Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

import networkx as nx
from networkx.algorithms import bipartite

from configuracao import LIMITE_EXAUSTIVO_EQUALIZACAO, TENTATIVAS_ALEATORIAS, rng_para
from falhas import InputError, StepFailure, garantir
from modelo_hipergrafo import ColouredKGraph, Verdict, tight_components
from registro import log_etapa


def _fracao(valor) -> Fraction:
    if isinstance(valor, float):
        return Fraction(str(valor))
    if isinstance(valor, str):
        return Fraction(valor)
    return Fraction(valor)


# --------------------------------------------------------------------------------------
# Modelos de dados
# --------------------------------------------------------------------------------------


@dataclass
class DenseMatchingCertificate:
    """
    Emparelhamento (x_{i,1}, ..., x_{i,k}) com as classes de coordenadas X_1..X_k,
    o modo (semi | half), o limiar t e as contagens de testemunhas por indice.
    """

    k: int
    matching: List[Tuple[int, ...]]
    classes: List[List[int]]
    mode: str
    threshold: int
    witnesses: List[int] = field(default_factory=list)
    colour: Optional[int] = None
    notes: Dict[str, object] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, object]:
        notas = {
            chave: (f"{v.numerator}/{v.denominator}" if isinstance(v, Fraction) else v)
            for chave, v in self.notes.items()
        }
        return {
            "tipo": "DenseMatchingCertificate",
            "k": self.k,
            "matching": [list(e) for e in self.matching],
            "classes": [list(c) for c in self.classes],
            "mode": self.mode,
            "threshold": self.threshold,
            "witnesses": list(self.witnesses),
            "colour": self.colour,
            "notes": notas,
        }

    @classmethod
    def from_dict(cls, dados: Mapping[str, object]) -> "DenseMatchingCertificate":
        try:
            return cls(
                k=int(dados["k"]),
                matching=[tuple(int(v) for v in e) for e in dados["matching"]],
                classes=[[int(v) for v in c] for c in dados["classes"]],
                mode=str(dados["mode"]),
                threshold=int(dados["threshold"]),
                witnesses=[int(w) for w in dados.get("witnesses", [])],
                colour=dados.get("colour"),
                notes=dict(dados.get("notes", {})),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"Certificado invalido: {exc}") from exc


def classes_from_matching(matching: Sequence[Tuple[int, ...]], k: int) -> List[List[int]]:
    return [[e[j] for e in matching] for j in range(k)]


def _contagens(R: ColouredKGraph, cert: DenseMatchingCertificate) -> List[int]:
    def eh_aresta(vertices) -> bool:
        cor = R.colour_of(vertices)
        return cor is not None and (cert.colour is None or cor == cert.colour)

    contagens = []
    for e in cert.matching:
        if cert.mode == "semi":
            total = sum(1 for f in cert.matching if eh_aresta((*e[:-1], f[-1])))
        else:
            total = sum(1 for f in cert.matching if eh_aresta((e[0], *f[1:])))
        contagens.append(total)
    return contagens


def verify_dense_matching(R: ColouredKGraph, cert: DenseMatchingCertificate) -> Verdict:
    """Recalcula todas as contagens; ok sse cada uma atinge o limiar."""
    if cert.mode not in ("semi", "half"):
        raise InputError(f"Modo desconhecido: {cert.mode!r}")
    if cert.k != R.k or len(cert.classes) != cert.k:
        raise InputError(f"Certificado com k={cert.k} e {len(cert.classes)} classes para um {R.k}-grafo.")
    vistos: Set[int] = set()
    for j, classe in enumerate(cert.classes):
        conjunto = set(classe)
        if vistos & conjunto:
            raise InputError(f"Classe X_{j + 1} intersecta outra classe.")
        if any(not 0 <= v < R.n for v in conjunto):
            raise InputError(f"Classe X_{j + 1} tem vertice fora do grafo.")
        vistos |= conjunto
    usados: Set[int] = set()
    for i, e in enumerate(cert.matching):
        if len(e) != cert.k:
            raise InputError(f"Aresta {i} do emparelhamento tem {len(e)} coordenadas.")
        for j, v in enumerate(e):
            if v not in cert.classes[j]:
                raise InputError(f"x_({i + 1},{j + 1}) = {v} nao pertence a X_{j + 1}.")
        if usados & set(e):
            return Verdict(False, i, "arestas do emparelhamento nao sao disjuntas")
        usados |= set(e)
        cor = R.colour_of(e)
        if cor is None or (cert.colour is not None and cor != cert.colour):
            return Verdict(False, i, "aresta do emparelhamento ausente no grafo (ou de outra cor)")

    contagens = _contagens(R, cert)
    extras = {"counts": contagens, "recorded_match": contagens == list(cert.witnesses)}
    for i, total in enumerate(contagens):
        if total < cert.threshold:
            return Verdict(False, i, f"indice {i} tem {total} < {cert.threshold} testemunhas", extras)
    return Verdict(True, extras=extras)


def delta_semi_dense(r: int, k: int) -> Fraction:
    return Fraction(1, 2 ** (2 ** k + 3 * k - 5) * r ** (2 ** k - 2))


def half_dense_constant(r: int, k: int) -> Fraction:
    return Fraction(1, 2 ** (9 * k) * (2 * r) ** (3 * 2 ** k))


def local_colouring_witness(R: ColouredKGraph, r: int) -> Optional[Tuple[int, ...]]:
    """Primeiro (k-1)-conjunto que ve mais de r cores, ou None."""
    for face in sorted(R.face_index):
        if len({c for _, c in R.face_index[face]}) > r:
            return face
    return None


# --------------------------------------------------------------------------------------
# Subgrafo monocromatico denso
# --------------------------------------------------------------------------------------


@dataclass
class MonoDenseReport:
    colour: int
    subgraph: ColouredKGraph
    average_degree: Fraction
    bound: Fraction
    bound_holds: bool
    locally_coloured: bool
    witness_vertex: Optional[int] = None

    def to_dict(self) -> Dict[str, object]:
        return {
            "colour": self.colour,
            "edges": len(self.subgraph),
            "average_degree": self.average_degree,
            "bound": self.bound,
            "bound_holds": self.bound_holds,
            "locally_coloured": self.locally_coloured,
            "witness_vertex": self.witness_vertex,
        }


def mono_dense_subgraph(G: ColouredKGraph, r: Optional[int] = None) -> MonoDenseReport:
    if G.k != 2:
        raise InputError("mono_dense_subgraph espera um 2-grafo.")
    r = r if r is not None else G.r
    testemunha = local_colouring_witness(G, r)
    contagem = G.colour_counts()
    cor = min(contagem, key=lambda c: (-contagem[c], c))
    d = Fraction(2 * len(G), G.n) if G.n else Fraction(0)
    limite = d * d / (2 * r * r)
    sub = G.restrict(cor)
    return MonoDenseReport(
        colour=cor,
        subgraph=sub,
        average_degree=d,
        bound=limite,
        bound_holds=len(sub) >= limite,
        locally_coloured=testemunha is None,
        witness_vertex=testemunha[0] if testemunha else None,
    )


# --------------------------------------------------------------------------------------
# Emparelhamento semi-denso (inducao em k)
# --------------------------------------------------------------------------------------


@dataclass
class _Nivel:
    matching: List[Tuple[int, ...]]
    colour: int


def _caso_base(H: ColouredKGraph, vertices: Sequence[int], r: int, t_total: int, registro: List[dict]) -> _Nivel:
    dentro = set(vertices)
    contagem: Dict[int, int] = {}
    for e, c in H.colouring:
        if dentro.issuperset(e):
            contagem[c] = contagem.get(c, 0) + 1
    if not contagem:
        raise StepFailure("base", "nenhuma aresta no 2-grafo do caso base", {"vertices": len(dentro)})
    cor = min(contagem, key=lambda c: (-contagem[c], c))

    grafo = nx.Graph()
    grafo.add_edges_from(e for e, c in H.colouring if c == cor and dentro.issuperset(e))
    componente = max(nx.connected_components(grafo), key=lambda comp: (len(comp), -min(comp)))
    sub = grafo.subgraph(componente)
    emparelhamento = [tuple(sorted(par)) for par in nx.max_weight_matching(sub, maxcardinality=True)]
    emparelhamento.sort()
    arestas = {tuple(sorted(e)) for e in sub.edges()}

    def contar(lista) -> List[int]:
        return [sum(1 for f in lista if tuple(sorted((e[0], f[1]))) in arestas) for e in lista]

    # orientacao: vira arestas enquanto a soma cresce sem piorar o minimo
    melhorou = True
    while melhorou and emparelhamento:
        melhorou = False
        for i in range(len(emparelhamento)):
            atual = contar(emparelhamento)
            virado = list(emparelhamento)
            virado[i] = (virado[i][1], virado[i][0])
            novo = contar(virado)
            if min(novo) >= min(atual) and sum(novo) > sum(atual):
                emparelhamento = virado
                melhorou = True

    alvo = max(1, math.ceil(delta_semi_dense(r, 2) * t_total))
    while len(emparelhamento) > 1:
        contagens = contar(emparelhamento)
        if min(contagens) >= alvo:
            break
        pior = min(range(len(emparelhamento)), key=lambda i: (contagens[i], i))
        emparelhamento.pop(pior)
    if not emparelhamento:
        raise StepFailure("base", "componente sem emparelhamento", {"cor": cor})
    registro.append({"nivel": 2, "cor": cor, "tamanho": len(emparelhamento), "alvo": alvo})
    return _Nivel(emparelhamento, cor)


def _semi_denso(
    H: ColouredKGraph,
    vertices: Sequence[int],
    r: int,
    rng,
    t_total: int,
    registro: List[dict],
) -> _Nivel:
    k = H.k
    if k == 2:
        return _caso_base(H, vertices, r, t_total, registro)

    t = len(vertices)
    tamanho_v = min(max(round(t / (8 * r)), 2 * (k - 1)), t - 1)
    if tamanho_v < k - 1:
        raise StepFailure("particao", "poucos vertices para separar V e W", {"t": t, "k": k})
    V = sorted(rng.sample(list(vertices), tamanho_v))
    em_v = set(V)
    W = sorted(set(vertices) - em_v)
    em_w = set(W)

    componentes: List[Tuple[int, Set[Tuple[int, ...]]]] = []
    for cor in range(H.r):
        for comp in tight_components(H.induced(vertices), restrict_colour=cor):
            componentes.append((cor, set(comp)))
    componente_de: Dict[Tuple[int, ...], int] = {}
    for indice, (_, comp) in enumerate(componentes):
        for e in comp:
            componente_de[e] = indice

    limiar_w = Fraction(len(W), 2 * r)
    arestas_g: List[Tuple[Tuple[int, ...], int]] = []
    sem_cor = 0
    for face in combinations(V, k - 1):
        por_comp: Dict[int, int] = {}
        for w, _ in H.face_index.get(face, ()):
            if w in em_w:
                indice = componente_de[tuple(sorted((*face, w)))]
                por_comp[indice] = por_comp.get(indice, 0) + 1
        qualificados = [i for i, total in por_comp.items() if total >= limiar_w]
        if qualificados:
            arestas_g.append((face, min(qualificados)))
        elif por_comp:
            sem_cor += 1
    if not arestas_g:
        raise StepFailure("fronteira", "o (k-1)-grafo de fronteira ficou vazio", {"V": len(V), "W": len(W)})

    G = ColouredKGraph(k - 1, H.n, max(c for _, c in arestas_g) + 1, arestas_g)
    violacao = local_colouring_witness(G, 2 * r * r)
    registro.append(
        {
            "nivel": k,
            "V": len(V),
            "W": len(W),
            "arestas_fronteira": len(arestas_g),
            "faces_sem_cor": sem_cor,
            "local_2r2": violacao is None,
        }
    )

    inferior = _semi_denso(G, V, 2 * r * r, rng, t_total, registro)
    t0 = inferior.colour
    anterior = inferior.matching
    ell = len(anterior)

    # J_i: indices j com x_{i,1..k-2} x_{j,k-1} em G na cor T0, aparados ao menor tamanho
    testemunhas: List[List[int]] = []
    for e in anterior:
        J = [j for j, f in enumerate(anterior) if G.colour_of((*e[:-1], f[-1])) == t0]
        testemunhas.append(J)
    tamanho_min = min(len(J) for J in testemunhas)
    for i, J in enumerate(testemunhas):
        while len(J) > tamanho_min:
            removivel = max(j for j in J if j != i)
            J.remove(removivel)

    comp_t0 = componentes[t0][1]
    usados: Set[int] = set()
    novo: List[Tuple[int, ...]] = []
    for i, e in enumerate(anterior):
        melhor: Optional[Tuple[int, int]] = None
        for w in W:
            if w in usados or tuple(sorted((w, *e))) not in comp_t0:
                continue
            pontos = sum(1 for j in testemunhas[i] if tuple(sorted((w, *e[:-1], anterior[j][-1]))) in comp_t0)
            if melhor is None or pontos > melhor[1]:
                melhor = (w, pontos)
        if melhor is None:
            raise StepFailure(
                "extensao", f"nenhum w em W estende a aresta {i} dentro de T0", {"aresta": list(e), "nivel": k}
            )
        usados.add(melhor[0])
        novo.append((melhor[0], *e))
    registro.append({"nivel": k, "estendidas": ell, "componente": t0, "testemunhas_aparadas": tamanho_min})
    return _Nivel(novo, componentes[t0][0])


def find_semi_dense(
    R: ColouredKGraph,
    epsilon=Fraction(1, 2),
    semente: int = 0,
    r: Optional[int] = None,
) -> DenseMatchingCertificate:
    """
    Emparelhamento semi-denso monocromatico dentro de uma componente apertada de R.

    O limiar devolvido e o alcancado (recontado em R); δ(r,k)·t segue nas notas.
    """
    r = r if r is not None else R.r
    t = R.n
    eps = _fracao(epsilon)
    testemunha = local_colouring_witness(R, r)
    if testemunha is not None:
        raise InputError(f"R nao e localmente {r}-colorido: {testemunha} ve mais de {r} cores.")
    minimo = (1 - eps) * math.comb(t, R.k)
    if len(R) < minimo:
        raise InputError(f"|E(R)| = {len(R)} < (1-ε)·C(t,k) = {float(minimo):.2f}.")

    registro: List[dict] = []
    nivel = _semi_denso(R, list(R.vertices), r, rng_para(semente, "semi_denso", R.k, t), t, registro)
    cert = DenseMatchingCertificate(
        k=R.k,
        matching=list(nivel.matching),
        classes=classes_from_matching(nivel.matching, R.k),
        mode="semi",
        threshold=0,
        colour=nivel.colour,
    )
    contagens = _contagens(R, cert)
    cert.witnesses = contagens
    cert.threshold = min(contagens)
    alvo = delta_semi_dense(r, R.k) * t
    cert.notes = {"delta_r_k": delta_semi_dense(r, R.k), "target": alvo, "meets_target": cert.threshold >= alvo}
    cert.notes["steps"] = registro
    log_etapa("semi_denso", tamanho=len(cert.matching), limiar=cert.threshold, alvo=alvo)
    return cert


# --------------------------------------------------------------------------------------
# Emparelhamento bipartido ancorado
# --------------------------------------------------------------------------------------


@dataclass
class AnchoredMatching:
    matching: List[Tuple[Hashable, Hashable]]
    degrees: Dict[Hashable, int]
    target: Fraction
    spanning: bool
    notes: Dict[str, object] = field(default_factory=dict)

    @property
    def min_degree(self) -> int:
        return min(self.degrees.values(), default=0)


def anchored_bipartite_matching(
    edges: Iterable[Tuple[Hashable, Hashable]],
    X: Iterable[Hashable],
    Y: Iterable[Hashable],
    delta,
    n: Optional[int] = None,
    semente: int = 0,
) -> AnchoredMatching:
    """
    Emparelhamento M tal que todo x de X em V(M) tem grau >= δ²n/8 dentro de G[V(M)].
    Exige |E| >= δn² (InputError caso contrario).
    """
    X, Y = list(dict.fromkeys(X)), list(dict.fromkeys(Y))
    delta = _fracao(delta)
    n = n if n is not None else max(len(X), len(Y))
    if len(X) > n or len(Y) > n:
        raise InputError(f"|X|={len(X)} ou |Y|={len(Y)} maior que n={n}.")
    conj_x, conj_y = set(X), set(Y)
    vizinhos: Dict[Tuple[str, Hashable], Set[Tuple[str, Hashable]]] = {}
    for x, y in edges:
        if x not in conj_x or y not in conj_y:
            raise InputError(f"Aresta ({x!r}, {y!r}) fora de X x Y.")
        vizinhos.setdefault(("x", x), set()).add(("y", y))
        vizinhos.setdefault(("y", y), set()).add(("x", x))
    total_arestas = sum(len(v) for no, v in vizinhos.items() if no[0] == "x")
    if total_arestas < delta * n * n:
        raise InputError(f"|E| = {total_arestas} < δn² = {delta * n * n}.")
    notas: Dict[str, object] = {"edges": total_arestas, "edge_condition": True}

    # descasca vertices com grau < δn/2
    vivos = {("x", x) for x in X} | {("y", y) for y in Y}
    corte = delta * n / 2
    mudou = True
    while mudou:
        mudou = False
        for no in sorted(vivos, key=repr):
            if len(vizinhos.get(no, set()) & vivos) < corte:
                vivos.discard(no)
                mudou = True
    xs = sorted((no for no in vivos if no[0] == "x"), key=repr)
    ys = sorted((no for no in vivos if no[0] == "y"), key=repr)
    if not xs or not ys:
        raise StepFailure("descasque", "X' ou Y' vazio apos remover graus < δn/2", {"X'": len(xs), "Y'": len(ys)})

    m = min(len(xs), len(ys))
    alvo = delta * delta * n / 8
    fixo, amostrado = (xs, ys) if len(xs) == m else (ys, xs)

    def grau_minimo(escolha: Sequence) -> int:
        lado = set(escolha)
        outro = set(fixo)
        graus = [len(vizinhos.get(no, set()) & lado) for no in fixo]
        graus += [len(vizinhos.get(no, set()) & outro) for no in escolha]
        return min(graus)

    escolhido: Optional[List] = None
    melhor = (-1, None)
    if len(amostrado) == m:
        escolhido = list(amostrado)
    elif n <= LIMITE_EXAUSTIVO_EQUALIZACAO:
        for combo in combinations(amostrado, m):
            g = grau_minimo(combo)
            if g > melhor[0]:
                melhor = (g, combo)
            if g >= alvo:
                escolhido = list(combo)
                break
    else:
        rng = rng_para(semente, "equalizacao", n, m)
        for _ in range(TENTATIVAS_ALEATORIAS):
            combo = rng.sample(amostrado, m)
            g = grau_minimo(combo)
            if g > melhor[0]:
                melhor = (g, combo)
            if g >= alvo:
                escolhido = sorted(combo, key=repr)
                break
    if escolhido is None:
        raise StepFailure(
            "equalizacao",
            f"nenhuma escolha de tamanho {m} atinge grau minimo δ²n/8 = {float(alvo):.3f}",
            {"melhor_grau": melhor[0], "melhor": [no[1] for no in (melhor[1] or [])]},
        )
    estrela = set(fixo) | set(escolhido)
    if grau_minimo(escolhido) < alvo:
        raise StepFailure("equalizacao", "grau minimo abaixo de δ²n/8", {"m": m})

    gstar = nx.Graph()
    gstar.add_nodes_from(estrela)
    for no in estrela:
        if no[0] == "x":
            gstar.add_edges_from((no, viz) for viz in vizinhos.get(no, set()) & estrela)
    topo = [no for no in estrela if no[0] == "x"]
    par = bipartite.hopcroft_karp_matching(gstar, top_nodes=topo)
    x_livres = [no for no in topo if no not in par]

    if not x_livres:
        x1 = set(topo)
        spanning = True
    else:
        x1 = set()
        fila = deque(x_livres)
        visitados = set(x_livres)
        while fila:
            atual = fila.popleft()
            for y in gstar[atual]:
                parceiro = par.get(y)
                if parceiro is None or parceiro == atual or parceiro in visitados:
                    continue
                visitados.add(parceiro)
                x1.add(parceiro)
                fila.append(parceiro)
        spanning = False
        garantir(bool(x1), "X1* vazio apesar de grau minimo positivo")
    y1 = set()
    for x in x1:
        y1 |= set(gstar[x])
    emparelhamento = sorted(((x, par[x]) for x in x1), key=repr)
    garantir(all(y in par for y in y1), "N(X1*) contem vertice livre: M* nao seria maximo")

    lado_y = {y for _, y in emparelhamento}
    graus = {x[1]: len(set(gstar[x]) & lado_y) for x, _ in emparelhamento}
    for x, g in graus.items():
        garantir(g >= alvo, "grau ancorado abaixo de δ²n/8", x=x, grau=g)
    notas.update({"m": m, "X1": len(x1), "Y1": len(y1)})
    return AnchoredMatching([(x[1], y[1]) for x, y in emparelhamento], graus, alvo, spanning, notas)


# --------------------------------------------------------------------------------------
# Semi -> meio denso
# --------------------------------------------------------------------------------------


def semi_to_half(R: ColouredKGraph, cert: DenseMatchingCertificate, delta=None, semente: int = 0) -> DenseMatchingCertificate:
    if cert.mode != "semi":
        raise InputError("semi_to_half espera um certificado em modo semi.")
    t = R.n
    delta = _fracao(delta) if delta is not None else Fraction(cert.threshold, t)
    veredito = verify_dense_matching(R, cert)
    if not veredito or min(veredito.extras["counts"], default=0) < delta * t:
        raise InputError(f"Certificado nao e δt-semi-denso com δ = {delta}.")
    alvo = delta ** 3 * t / 2
    if cert.k == 2:
        notas = dict(cert.notes, target=alvo, reinterpreted=True)
        return replace(cert, mode="half", notes=notas)

    ell = len(cert.matching)

    def eh_aresta(vertices) -> bool:
        cor = R.colour_of(vertices)
        return cor is not None and (cert.colour is None or cor == cert.colour)

    arestas = [
        (j, i)
        for i, e in enumerate(cert.matching)
        for j, f in enumerate(cert.matching)
        if eh_aresta((*e[:-1], f[-1]))
    ]
    if len(arestas) < delta / 2 * ell * ell:
        raise StepFailure(
            "bipartido",
            "grafo auxiliar com menos de δℓ²/2 arestas",
            {"arestas": len(arestas), "ell": ell, "delta": delta},
        )
    ancorado = anchored_bipartite_matching(arestas, range(ell), range(ell), delta / 2, n=ell, semente=semente)

    novo = [
        (cert.matching[j][-1], *reversed(cert.matching[i][:-1]))
        for j, i in ancorado.matching
    ]
    resultado = DenseMatchingCertificate(
        k=cert.k,
        matching=novo,
        classes=classes_from_matching(novo, cert.k),
        mode="half",
        threshold=0,
        colour=cert.colour,
    )
    contagens = _contagens(R, resultado)
    resultado.witnesses = contagens
    resultado.threshold = min(contagens)
    resultado.notes = {
        "delta": delta,
        "target": alvo,
        "meets_target": resultado.threshold >= alvo,
        "anchored_min_degree": ancorado.min_degree,
        "bipartite": ancorado.notes,
    }
    garantir(resultado.threshold >= ancorado.min_degree, "limiar meio-denso menor que o grau ancorado")
    return resultado


def half_dense_from_kgraph(R: ColouredKGraph, epsilon=Fraction(1, 2), semente: int = 0) -> DenseMatchingCertificate:
    """Encadeia find_semi_dense e semi_to_half; a constante de meia-densidade garantida fica nas notas."""
    semi = find_semi_dense(R, epsilon, semente)
    meio = semi_to_half(R, semi, Fraction(semi.threshold, R.n), semente)
    meio.notes["corollary_constant"] = half_dense_constant(R.r, R.k)
    meio.notes["corollary_target"] = half_dense_constant(R.r, R.k) * R.n
    meio.notes["semi_threshold"] = semi.threshold
    return meio


# --------------------------------------------------------------------------------------
# Hub robusto
# --------------------------------------------------------------------------------------


@dataclass
class RobustHub:
    X: List[Hashable]
    Y: List[Hashable]
    p: Optional[int]
    L: int
    exact: bool
    target: Fraction
    pair_counts: Dict[Tuple[Hashable, Hashable], int] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, object]:
        return {
            "X": list(self.X),
            "Y": list(self.Y),
            "p": self.p,
            "L": self.L,
            "exact": self.exact,
            "target": self.target,
        }


def _fluxo_vertices(D: nx.DiGraph, x, y, removidos: Set = frozenset()) -> int:
    aux = nx.DiGraph()
    for v in D.nodes:
        if v in removidos:
            continue
        aux.add_edge(("in", v), ("out", v), capacity=1)
    for u, v in D.edges:
        if u in removidos or v in removidos or u == v:
            continue
        aux.add_edge(("out", u), ("in", v), capacity=1)
    if ("out", x) not in aux or ("in", y) not in aux:
        return 0
    return int(nx.maximum_flow_value(aux, ("out", x), ("in", y), capacity="capacity"))


def _empacotamento_exato(D: nx.DiGraph, x, y, L: int, teto: int) -> List[List]:
    caminhos = sorted(nx.all_simple_paths(D, x, y, cutoff=L), key=lambda p: (len(p), p))
    melhor: List[List] = []

    def busca(i: int, escolhidos: List[List], usados: Set) -> bool:
        nonlocal melhor
        if len(escolhidos) > len(melhor):
            melhor = list(escolhidos)
            if len(melhor) >= teto:
                return True
        if i >= len(caminhos) or len(escolhidos) + (len(caminhos) - i) <= len(melhor):
            return False
        interior = set(caminhos[i][1:-1])
        if not interior & usados and (interior or not any(len(c) == 2 for c in escolhidos)):
            escolhidos.append(caminhos[i])
            if busca(i + 1, escolhidos, usados | interior):
                return True
            escolhidos.pop()
        return busca(i + 1, escolhidos, usados)

    busca(0, [], set())
    return melhor


def _empacotamento_guloso(D: nx.DiGraph, x, y, L: int) -> List[List]:
    caminhos: List[List] = []
    bloqueados: Set = set()
    usou_direto = False
    while True:
        pais = {x: None}
        fila = deque([(x, 0)])
        achado = None
        while fila and achado is None:
            atual, dist = fila.popleft()
            if dist >= L:
                continue
            for viz in sorted(D.successors(atual), key=repr):
                if viz == y:
                    if atual == x and usou_direto:
                        continue
                    pais_final = dict(pais)
                    pais_final[y] = atual
                    achado = pais_final
                    break
                if viz in pais or viz in bloqueados:
                    continue
                pais[viz] = atual
                fila.append((viz, dist + 1))
        if achado is None:
            return caminhos
        caminho = [y]
        while caminho[-1] != x:
            caminho.append(achado[caminho[-1]])
        caminho.reverse()
        if len(caminho) == 2:
            usou_direto = True
        bloqueados |= set(caminho[1:-1])
        caminhos.append(caminho)


def disjoint_paths(D: nx.DiGraph, x, y, L: int) -> Tuple[List[List], bool]:
    """Familia de caminhos x->y internamente disjuntos de comprimento <= L e se e maxima."""
    n = D.number_of_nodes()
    if L >= n - 1:
        valor = _fluxo_vertices(D, x, y)
        caminhos = _empacotamento_exato(D, x, y, n, valor) if n <= 8 else _empacotamento_guloso(D, x, y, n)
        if len(caminhos) == valor:
            return caminhos, True
        return caminhos, False
    if L <= 4:
        teto = _fluxo_vertices(D, x, y)
        return _empacotamento_exato(D, x, y, L, teto), True
    return _empacotamento_guloso(D, x, y, L), False


def _contar_caminhos(D: nx.DiGraph, x, y, L: int) -> Tuple[int, bool]:
    n = D.number_of_nodes()
    if L >= n - 1:
        return _fluxo_vertices(D, x, y), True
    caminhos, exato = disjoint_paths(D, x, y, L)
    return len(caminhos), exato


def robust_hub(D: nx.DiGraph, c) -> RobustHub:
    """
    Busca Y ⊆ X com |Y| >= cn/2 e, para todo x em X e y em Y, ao menos c⁶n caminhos
    internamente disjuntos de comprimento <= c⁻³ (contados por fluxo ou empacotamento).
    """
    c = _fracao(c)
    n = D.number_of_nodes()
    if n == 0 or c <= 0:
        raise InputError("robust_hub exige digrafo nao vazio e c > 0.")
    grau_min = min(d for _, d in D.out_degree())
    if grau_min < c * n:
        raise InputError(f"δ+(D) = {grau_min} < cn = {float(c * n):.3f}.")
    L = math.floor(1 / c ** 3)
    alvo = c ** 6 * n
    vertices = sorted(D.nodes, key=repr)

    contagens: Dict[Tuple[Hashable, Hashable], int] = {}
    exato = True
    for x in vertices:
        for y in vertices:
            if x == y:
                continue
            valor, eh_exato = _contar_caminhos(D, x, y, L)
            contagens[(x, y)] = valor
            exato = exato and eh_exato

    X = list(vertices)

    def y_de(conjunto: List) -> List:
        return [y for y in conjunto if all(contagens[(x, y)] >= alvo for x in conjunto if x != y)]

    Y = y_de(X)
    while len(Y) < c * n / 2:
        if len(X) <= 1:
            raise StepFailure("hub", "nenhum par (X, Y) atinge |Y| >= cn/2", {"Y": Y, "alvo": alvo})
        falhas = {x: sum(1 for y in X if y != x and contagens[(x, y)] < alvo) for x in X}
        pior = max(X, key=lambda x: (falhas[x], -vertices.index(x)))
        X.remove(pior)
        Y = y_de(X)
    pares = [contagens[(x, y)] for x in X for y in Y if x != y]
    hub = RobustHub(X, Y, min(pares) if pares else None, L, exato, alvo, contagens)
    log_etapa("hub_robusto", X=len(X), Y=len(Y), p=hub.p, L=L, exato=exato)
    return hub


def choose_balancing_indices(n: int, edges: Iterable[Tuple[int, int]], delta) -> Tuple[List[int], List[int], RobustHub]:
    """I+ e I- de tamanho floor(δn/4) cada, tirados de Y do hub do digrafo x_i -> x_j (x_i y_j em E)."""
    delta = _fracao(delta)
    D = nx.DiGraph()
    D.add_nodes_from(range(n))
    D.add_edges_from((i, j) for i, j in edges if i != j)
    grau_min = min(d for _, d in D.out_degree())
    if grau_min == 0:
        raise StepFailure("indices", "algum x_i nao tem arco para outro indice", {})
    c = min(delta, Fraction(grau_min, n))
    hub = robust_hub(D, c)
    tamanho = math.floor(delta * n / 2)
    escolhidos = sorted(hub.Y)[:tamanho]
    metade = len(escolhidos) // 2
    if metade == 0:
        raise StepFailure("indices", "Y do hub pequeno demais para separar I+ e I-", {"Y": hub.Y})
    return escolhidos[:metade], escolhidos[metade:2 * metade], hub


# --------------------------------------------------------------------------------------
# Balanceador fracionario
# --------------------------------------------------------------------------------------


@dataclass
class FractionalMatching:
    """Pesos exatos nas arestas x_i y_j (chave (i, j)); M = {(i, i)}."""

    n: int
    weights: Dict[Tuple[int, int], Fraction]
    iterations: int = 0
    notes: Dict[str, object] = field(default_factory=dict)

    @property
    def weight(self) -> Fraction:
        return sum(self.weights.values(), Fraction(0))

    @property
    def support(self) -> List[Tuple[int, int]]:
        return sorted(e for e, w in self.weights.items() if w != 0)

    def vertex_weight(self, lado: str, i: int) -> Fraction:
        if lado == "x":
            return sum((w for (a, _), w in self.weights.items() if a == i), Fraction(0))
        return sum((w for (_, b), w in self.weights.items() if b == i), Fraction(0))

    def to_dict(self) -> Dict[str, object]:
        return {
            "n": self.n,
            "weights": [[i, j, f"{w.numerator}/{w.denominator}"] for (i, j), w in sorted(self.weights.items()) if w],
            "iterations": self.iterations,
            "weight": f"{self.weight.numerator}/{self.weight.denominator}",
            "notes": {chave: (str(v) if isinstance(v, Fraction) else v) for chave, v in self.notes.items()},
        }


def _checar_hipoteses(n, arestas, wx, wy, mais, menos, c, mu, delta) -> None:
    meio = Fraction(1, 2)
    if c <= 0 or mu <= 0 or c + mu > Fraction(1, 8):
        raise InputError(f"Exige c, mu > 0 e c + mu <= 1/8 (c={c}, mu={mu}).")
    if mais & menos:
        raise InputError("I+ e I- precisam ser disjuntos.")
    for i in range(n):
        if (i, i) not in arestas:
            raise InputError(f"Emparelhamento perfeito ausente: falta x_{i} y_{i}.")
        if wy[i] != meio:
            raise InputError(f"ω(y_{i}) = {wy[i]} != 1/2.")
        if i not in mais and not meio - c <= wx[i] <= meio:
            raise InputError(f"ω(x_{i}) = {wx[i]} fora de [1/2-c, 1/2] (i fora de I+).")
        if i not in menos and not meio <= wx[i] <= meio + c:
            raise InputError(f"ω(x_{i}) = {wx[i]} fora de [1/2, 1/2+c] (i fora de I-).")
        grau = sum(1 for (a, _) in arestas if a == i)
        if grau < delta * n:
            raise InputError(f"d(x_{i}, Y) = {grau} < δn = {float(delta * n):.3f}.")
    excesso = sum((wx[i] - wy[i] for i in mais), Fraction(0))
    falta = sum((wy[j] - wx[j] for j in menos), Fraction(0))
    if excesso != falta:
        raise InputError(f"Balanco violado: Σ_I+ = {excesso} != Σ_I- = {falta}.")
    if not excesso < delta ** 9 * n / 8:
        raise InputError(f"Balanco {excesso} >= δ⁹n/8 = {float(delta ** 9 * n / 8):.6f}.")


def balance_fractional_matching(
    n: int,
    edges: Iterable[Tuple[int, int]],
    omega_x: Sequence,
    omega_y: Sequence,
    I_plus: Iterable[int],
    I_minus: Iterable[int],
    c,
    mu,
    delta,
) -> FractionalMatching:
    """
    Parte de ω₀* (peso 1/2 em M fora de M⁻, ω(x) em M⁻) e, enquanto houver par deficiente
    (x⁺, y⁻), desloca mu por um caminho M-aumentado curto que evita E₀.
    """
    arestas = {(int(i), int(j)) for i, j in edges}
    wx = [_fracao(w) for w in omega_x]
    wy = [_fracao(w) for w in omega_y]
    mais, menos = set(I_plus), set(I_minus)
    c, mu, delta = _fracao(c), _fracao(mu), _fracao(delta)
    if len(wx) != n or len(wy) != n:
        raise InputError("ω precisa de um valor por vertice.")
    _checar_hipoteses(n, arestas, wx, wy, mais, menos, c, mu, delta)

    inicial = {(i, i): (wx[i] if i in menos else Fraction(1, 2)) for i in range(n)}
    pesos: Dict[Tuple[int, int], Fraction] = {e: inicial.get(e, Fraction(0)) for e in arestas}
    limite_arcos = math.floor(1 / delta ** 3)
    saida = {i: sorted(j for (a, j) in arestas if a == i and j != i) for i in range(n)}
    alvo = sum(wx, Fraction(0)) - mu * n

    def peso_x(i):
        return sum((w for (a, _), w in pesos.items() if a == i), Fraction(0))

    def peso_y(j):
        return sum((w for (_, b), w in pesos.items() if b == j), Fraction(0))

    def em_e0(e) -> bool:
        return abs(pesos[e] - inicial.get(e, Fraction(0))) >= Fraction(1, 4)

    def caminho(origem: int, destino: int) -> Optional[List[int]]:
        pais = {origem: None}
        fila = deque([(origem, 0)])
        while fila:
            atual, arcos = fila.popleft()
            if arcos >= limite_arcos:
                continue
            for prox in saida[atual]:
                if prox in pais or em_e0((atual, prox)) or em_e0((prox, prox)):
                    continue
                pais[prox] = atual
                if prox == destino:
                    seq = [destino]
                    while seq[-1] != origem:
                        seq.append(pais[seq[-1]])
                    return list(reversed(seq))
                fila.append((prox, arcos + 1))
        return None

    iteracoes = 0
    while True:
        deficientes_x = [i for i in sorted(mais) if wx[i] - peso_x(i) >= mu]
        deficientes_y = [j for j in sorted(menos) if wy[j] - peso_y(j) >= mu]
        if not deficientes_x or not deficientes_y:
            break
        rota = None
        for i in deficientes_x:
            for j in deficientes_y:
                rota = caminho(i, j)
                if rota:
                    break
            if rota:
                break
        if rota is None:
            if sum(pesos.values(), Fraction(0)) >= alvo:
                break
            raise StepFailure(
                "balanceador",
                "nenhum caminho M-aumentado curto evitando E0 com folga restante",
                {
                    "iteracoes": iteracoes,
                    "x_deficientes": deficientes_x,
                    "y_deficientes": deficientes_y,
                    "peso": str(sum(pesos.values(), Fraction(0))),
                },
            )
        antes = sum(pesos.values(), Fraction(0))
        for a in range(len(rota) - 1):
            pesos[(rota[a], rota[a + 1])] += mu
        for a in range(1, len(rota) - 1):
            pesos[(rota[a], rota[a])] -= mu
        iteracoes += 1
        depois = sum(pesos.values(), Fraction(0))
        garantir(depois == antes + mu, "iteracao nao somou exatamente mu", antes=str(antes), depois=str(depois))
        for i in range(n):
            garantir(pesos[(i, i)] >= Fraction(1, 8), "aresta de M abaixo de 1/8", i=i)
            garantir(Fraction(1, 2) - c <= peso_x(i) <= wx[i], "peso de x fora dos limites", i=i)
            garantir(Fraction(1, 2) - c <= peso_y(i) <= wy[i], "peso de y fora dos limites", i=i)

    resultado = FractionalMatching(n, pesos, iteracoes)
    fora_m = [w for (i, j), w in pesos.items() if i != j and w > 0]
    resultado.notes = {
        "target": alvo,
        "meets_target": resultado.weight >= alvo,
        "min_matching_weight": min(pesos[(i, i)] for i in range(n)) if n else None,
        "min_off_matching_weight": min(fora_m) if fora_m else None,
        "path_arc_limit": limite_arcos,
    }
    return resultado
