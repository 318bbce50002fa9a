#!/usr/bin/env python3
"""
Modelo de dados para k-grafos com arestas coloridas e multigrafos com arestas coloridas.

Resumo do fluxo:
1. `ColouredKGraph` guarda um k-grafo com r cores (arestas como tuplas ordenadas).
2. `EdgeColouredMultigraph` guarda um multigrafo com rotulos de cor arbitrarios.
3. Funcoes derivadas: componentes apertadas, grafo de ligacao, perfil de graus
   (δ_mon, δ*_mon, V*) e verificadores de ciclos/caminhos apertados.
4. Formato texto de intercambio (HGRAPH / MGRAPH), dicionarios JSON e geradores
   aleatorios com semente.

Dependencias:
    python >= 3.9
    networkx (union-find das componentes apertadas)

Uso esperado:
    H = read_instance("instancia.hgraph")
    print(verify_tight_cycle(H, TightCycle((0, 1, 2, 3))))
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from pathlib import Path
from typing import Dict, FrozenSet, Hashable, Iterable, List, Mapping, Optional, Sequence, Set, Tuple, Union

from networkx.utils import UnionFind

from configuracao import rng_para
from falhas import InputError

Edge = Tuple[int, ...]
Colour = Hashable


def colour_key(cor: Colour):
    """Chave de ordenacao estavel para rotulos de cor (inteiros antes de textos)."""
    return (type(cor).__name__ != "int", str(type(cor).__name__), cor)


# --------------------------------------------------------------------------------------
# Modelos de dados
# --------------------------------------------------------------------------------------


def _normalizar_coloracao(colouring) -> Tuple[Tuple[Edge, int], ...]:
    itens = colouring.items() if isinstance(colouring, Mapping) else colouring
    vistos: Dict[Edge, int] = {}
    for edge, cor in itens:
        chave = tuple(sorted(int(v) for v in edge))
        if chave in vistos:
            raise InputError(f"Aresta duplicada: {chave}")
        vistos[chave] = int(cor)
    return tuple(sorted(vistos.items()))


@dataclass(frozen=True)
class ColouredKGraph:
    """k-grafo sobre os vertices 0..n-1 com uma r-coloracao das arestas."""

    k: int
    n: int
    r: int
    colouring: Tuple[Tuple[Edge, int], ...] = ()

    def __post_init__(self) -> None:
        if self.k < 2:
            raise InputError(f"Aridade k deve ser >= 2 (recebido {self.k}).")
        if self.n < 0 or self.r < 1:
            raise InputError(f"Parametros invalidos: n={self.n}, r={self.r}.")
        normalizada = _normalizar_coloracao(self.colouring)
        object.__setattr__(self, "colouring", normalizada)
        for edge, cor in normalizada:
            if len(edge) != self.k or len(set(edge)) != self.k:
                raise InputError(f"Aresta {edge} nao tem {self.k} vertices distintos.")
            if edge[0] < 0 or edge[-1] >= self.n:
                raise InputError(f"Aresta {edge} fora de 0..{self.n - 1}.")
            if not 0 <= cor < self.r:
                raise InputError(f"Cor {cor} da aresta {edge} fora de 0..{self.r - 1}.")

    @cached_property
    def colour_map(self) -> Dict[Edge, int]:
        return dict(self.colouring)

    @cached_property
    def edges(self) -> Tuple[Edge, ...]:
        return tuple(edge for edge, _ in self.colouring)

    @cached_property
    def face_index(self) -> Dict[Edge, List[Tuple[int, int]]]:
        """(k-1)-face -> lista de (vertice que completa a aresta, cor)."""
        indice: Dict[Edge, List[Tuple[int, int]]] = {}
        for edge, cor in self.colouring:
            for i, v in enumerate(edge):
                face = edge[:i] + edge[i + 1:]
                indice.setdefault(face, []).append((v, cor))
        return indice

    @cached_property
    def incidence(self) -> Dict[int, List[Edge]]:
        indice: Dict[int, List[Edge]] = {}
        for edge in self.edges:
            for v in edge:
                indice.setdefault(v, []).append(edge)
        return indice

    @property
    def vertices(self) -> range:
        return range(self.n)

    def __len__(self) -> int:
        return len(self.colouring)

    def has_edge(self, vertices: Iterable[int]) -> bool:
        return tuple(sorted(vertices)) in self.colour_map

    def colour_of(self, vertices: Iterable[int]) -> Optional[int]:
        return self.colour_map.get(tuple(sorted(vertices)))

    def edges_of_colour(self, colour: int) -> List[Edge]:
        return [edge for edge, cor in self.colouring if cor == colour]

    def colour_counts(self) -> Dict[int, int]:
        contagem = {c: 0 for c in range(self.r)}
        for _, cor in self.colouring:
            contagem[cor] += 1
        return contagem

    def degree(self, v: int) -> int:
        return len(self.incidence.get(v, ()))

    def max_degree(self) -> int:
        return max((len(lista) for lista in self.incidence.values()), default=0)

    def restrict(self, colour: int) -> "ColouredKGraph":
        return ColouredKGraph(self.k, self.n, self.r, [(e, c) for e, c in self.colouring if c == colour])

    def induced(self, vertices: Iterable[int]) -> "ColouredKGraph":
        permitidos = set(vertices)
        return ColouredKGraph(
            self.k, self.n, self.r, [(e, c) for e, c in self.colouring if permitidos.issuperset(e)]
        )

    def without_edges(self, edges: Iterable[Iterable[int]]) -> "ColouredKGraph":
        remover = {tuple(sorted(e)) for e in edges}
        return ColouredKGraph(self.k, self.n, self.r, [(e, c) for e, c in self.colouring if e not in remover])

    def relabel(self, mapping: Sequence[int]) -> "ColouredKGraph":
        if sorted(mapping) != list(range(self.n)):
            raise InputError("Reetiquetagem precisa ser uma permutacao de 0..n-1.")
        return ColouredKGraph(
            self.k, self.n, self.r, [(tuple(mapping[v] for v in e), c) for e, c in self.colouring]
        )

    def to_dict(self) -> Dict[str, object]:
        return {
            "tipo": "HGRAPH",
            "k": self.k,
            "n": self.n,
            "r": self.r,
            "edges": [[list(e), c] for e, c in self.colouring],
        }

    @classmethod
    def from_dict(cls, dados: Mapping[str, object]) -> "ColouredKGraph":
        try:
            return cls(
                int(dados["k"]), int(dados["n"]), int(dados["r"]),
                [(tuple(e), c) for e, c in dados.get("edges", [])],
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"Dicionario HGRAPH invalido: {exc}") from exc


@dataclass(frozen=True)
class MultiEdge:
    u: int
    v: int
    colour: Colour

    def other(self, w: int) -> int:
        return self.v if w == self.u else self.u


@dataclass(frozen=True)
class EdgeColouredMultigraph:
    """Multigrafo com arestas paralelas permitidas; a identidade da aresta e a posicao na lista."""

    n: int
    edges: Tuple[MultiEdge, ...] = ()

    def __post_init__(self) -> None:
        normalizadas = []
        for item in self.edges:
            aresta = item if isinstance(item, MultiEdge) else MultiEdge(int(item[0]), int(item[1]), item[2])
            if aresta.u == aresta.v:
                raise InputError(f"Laco em {aresta.u} nao e permitido.")
            for w in (aresta.u, aresta.v):
                if not 0 <= w < self.n:
                    raise InputError(f"Vertice {w} fora de 0..{self.n - 1}.")
            normalizadas.append(aresta)
        tipos = {type(a.colour) for a in normalizadas}
        if len(tipos) > 1 and not tipos <= {int, bool}:
            raise InputError("Rotulos de cor misturam tipos nao comparaveis.")
        object.__setattr__(self, "edges", tuple(normalizadas))

    @cached_property
    def colours(self) -> Tuple[Colour, ...]:
        return tuple(sorted({a.colour for a in self.edges}))

    @cached_property
    def adjacency(self) -> Dict[int, Dict[Colour, Set[int]]]:
        adj: Dict[int, Dict[Colour, Set[int]]] = {}
        for a in self.edges:
            adj.setdefault(a.u, {}).setdefault(a.colour, set()).add(a.v)
            adj.setdefault(a.v, {}).setdefault(a.colour, set()).add(a.u)
        return adj

    @cached_property
    def v_star(self) -> FrozenSet[int]:
        return frozenset(v for v, por_cor in self.adjacency.items() if len(por_cor) >= 2)

    @property
    def vertices(self) -> range:
        return range(self.n)

    def non_isolated(self) -> Set[int]:
        return set(self.adjacency)

    def colours_at(self, v: int) -> Set[Colour]:
        return set(self.adjacency.get(v, {}))

    def neighbours(self, v: int, colour: Optional[Colour] = None) -> Set[int]:
        por_cor = self.adjacency.get(v, {})
        if colour is not None:
            return set(por_cor.get(colour, ()))
        vizinhos: Set[int] = set()
        for conjunto in por_cor.values():
            vizinhos |= conjunto
        return vizinhos

    def d_c(self, v: int, colour: Colour, within: Optional[Iterable[int]] = None) -> int:
        """Numero de vizinhos distintos de v na cor dada (opcionalmente restrito a `within`)."""
        vizinhos = self.adjacency.get(v, {}).get(colour, set())
        if within is None:
            return len(vizinhos)
        return len(vizinhos & set(within))

    def edge_colours(self, u: int, v: int) -> Set[Colour]:
        return {c for c, viz in self.adjacency.get(u, {}).items() if v in viz}

    def colour_class(self, colour: Colour) -> List[MultiEdge]:
        return [a for a in self.edges if a.colour == colour]

    def without_vertices(self, vertices: Iterable[int]) -> "EdgeColouredMultigraph":
        fora = set(vertices)
        return EdgeColouredMultigraph(self.n, tuple(a for a in self.edges if a.u not in fora and a.v not in fora))

    def without_colours(self, colours: Iterable[Colour]) -> "EdgeColouredMultigraph":
        fora = set(colours)
        return EdgeColouredMultigraph(self.n, tuple(a for a in self.edges if a.colour not in fora))

    def induced(self, vertices: Iterable[int]) -> "EdgeColouredMultigraph":
        dentro = set(vertices)
        return EdgeColouredMultigraph(self.n, tuple(a for a in self.edges if a.u in dentro and a.v in dentro))

    def without_edges_between(self, pares: Iterable[Tuple[int, int]]) -> "EdgeColouredMultigraph":
        fora = {frozenset(p) for p in pares}
        return EdgeColouredMultigraph(self.n, tuple(a for a in self.edges if frozenset((a.u, a.v)) not in fora))

    def to_dict(self) -> Dict[str, object]:
        return {"tipo": "MGRAPH", "n": self.n, "edges": [[a.u, a.v, a.colour] for a in self.edges]}

    @classmethod
    def from_dict(cls, dados: Mapping[str, object]) -> "EdgeColouredMultigraph":
        try:
            return cls(int(dados["n"]), tuple(MultiEdge(int(u), int(v), c) for u, v, c in dados.get("edges", [])))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"Dicionario MGRAPH invalido: {exc}") from exc


@dataclass
class DegreeProfile:
    per_colour: Dict[int, Dict[Colour, int]]
    delta_mon: Optional[int]
    delta_mon_star: Optional[int]
    v_star: FrozenSet[int]
    attaining: Optional[Tuple[int, Colour]] = None

    def to_dict(self) -> Dict[str, object]:
        return {
            "delta_mon": self.delta_mon,
            "delta_mon_star": self.delta_mon_star,
            "v_star": sorted(self.v_star),
            "attaining": list(self.attaining) if self.attaining else None,
        }


def _canonica(ordem: Tuple[int, ...]) -> Tuple[int, ...]:
    if not ordem:
        return ordem
    candidatas = []
    for seq in (ordem, tuple(reversed(ordem))):
        for i in range(len(seq)):
            candidatas.append(seq[i:] + seq[:i])
    return min(candidatas)


@dataclass(frozen=True)
class TightCycle:
    order: Tuple[int, ...]
    degenerate: bool = False
    colour: Optional[int] = None

    def __post_init__(self) -> None:
        ordem = tuple(int(v) for v in self.order)
        if len(set(ordem)) != len(ordem):
            raise InputError(f"Ciclo com vertice repetido: {ordem}")
        object.__setattr__(self, "order", ordem)

    def __len__(self) -> int:
        return len(self.order)

    @property
    def vertices(self) -> FrozenSet[int]:
        return frozenset(self.order)

    def canonical(self) -> "TightCycle":
        ordem = tuple(sorted(self.order)) if self.degenerate else _canonica(self.order)
        return TightCycle(ordem, self.degenerate, self.colour)

    def to_dict(self) -> Dict[str, object]:
        return {"order": list(self.order), "colour": self.colour, "degenerate": self.degenerate}

    @classmethod
    def from_dict(cls, dados: Mapping[str, object]) -> "TightCycle":
        return cls(tuple(dados["order"]), bool(dados.get("degenerate", False)), dados.get("colour"))


@dataclass(frozen=True)
class TightPath:
    order: Tuple[int, ...]

    def __post_init__(self) -> None:
        ordem = tuple(int(v) for v in self.order)
        if len(set(ordem)) != len(ordem):
            raise InputError(f"Caminho com vertice repetido: {ordem}")
        object.__setattr__(self, "order", ordem)

    def __len__(self) -> int:
        return len(self.order)

    def interior(self) -> Tuple[int, ...]:
        return self.order[1:-1]


@dataclass(frozen=True)
class RainbowCycle:
    """Ciclo v_1..v_l em um multigrafo; colours[i] e a cor da aresta v_i v_(i+1) (ciclicamente)."""

    vertices: Tuple[int, ...]
    colours: Tuple[Colour, ...]

    def __post_init__(self) -> None:
        vertices = tuple(int(v) for v in self.vertices)
        cores = tuple(self.colours)
        if len(vertices) < 2 or len(cores) != len(vertices):
            raise InputError("Ciclo arco-iris exige l >= 2 vertices e uma cor por aresta.")
        if len(set(vertices)) != len(vertices):
            raise InputError(f"Ciclo com vertice repetido: {vertices}")
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "colours", cores)

    def __len__(self) -> int:
        return len(self.vertices)

    def edges(self) -> List[Tuple[int, int, Colour]]:
        L = len(self.vertices)
        return [(self.vertices[i], self.vertices[(i + 1) % L], self.colours[i]) for i in range(L)]

    def to_dict(self) -> Dict[str, object]:
        return {"vertices": list(self.vertices), "colours": list(self.colours)}

    @classmethod
    def from_dict(cls, dados: Mapping[str, object]) -> "RainbowCycle":
        return cls(tuple(dados["vertices"]), tuple(dados["colours"]))


@dataclass
class Verdict:
    """Resultado de um verificador: `ok`, testemunha da primeira falha e detalhes."""

    ok: bool
    witness: object = None
    detail: str = ""
    extras: Dict[str, object] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> Dict[str, object]:
        witness = self.witness
        if isinstance(witness, tuple):
            witness = list(witness)
        return {"ok": self.ok, "witness": witness, "detail": self.detail, **self.extras}


# --------------------------------------------------------------------------------------
# Quantidades derivadas
# --------------------------------------------------------------------------------------


def tight_components(H: ColouredKGraph, restrict_colour: Optional[int] = None) -> List[List[Edge]]:
    """Classes de arestas sob o fecho transitivo de |e ∩ f| = k-1, via faces compartilhadas."""
    arestas = [e for e, c in H.colouring if restrict_colour is None or c == restrict_colour]
    if not arestas:
        return []
    uf = UnionFind(arestas)
    primeira_por_face: Dict[Edge, Edge] = {}
    for e in arestas:
        for i in range(len(e)):
            face = e[:i] + e[i + 1:]
            anterior = primeira_por_face.setdefault(face, e)
            if anterior != e:
                uf.union(anterior, e)
    componentes = [sorted(grupo) for grupo in uf.to_sets()]
    return sorted(componentes, key=lambda comp: comp[0])


def link_graph(H: ColouredKGraph, z: int) -> ColouredKGraph:
    if not 0 <= z < H.n:
        raise InputError(f"Vertice desconhecido: {z}")
    if H.k < 3:
        raise InputError("O grafo de ligacao so e um (k-1)-grafo para k >= 3.")
    return ColouredKGraph(
        H.k - 1, H.n, H.r, [(tuple(v for v in e if v != z), c) for e, c in H.colouring if z in e]
    )


def degree_profile(G: EdgeColouredMultigraph) -> DegreeProfile:
    per_colour: Dict[int, Dict[Colour, int]] = {
        v: {c: len(viz) for c, viz in por_cor.items()} for v, por_cor in G.adjacency.items()
    }
    delta_mon = min((d for graus in per_colour.values() for d in graus.values()), default=None)

    delta_star: Optional[int] = None
    attaining: Optional[Tuple[int, Colour]] = None
    for v in sorted(G.v_star):
        for c in sorted(per_colour[v]):
            d = per_colour[v][c]
            if delta_star is None or d < delta_star:
                delta_star, attaining = d, (v, c)
    return DegreeProfile(per_colour, delta_mon, delta_star, G.v_star, attaining)


def _janelas(ordem: Sequence[int], k: int, ciclica: bool):
    total = len(ordem) if ciclica else len(ordem) - k + 1
    for i in range(max(total, 0)):
        yield tuple(ordem[(i + j) % len(ordem)] for j in range(k))


def _verificar_janelas(H, ordem, ciclica, colour, monochromatic) -> Verdict:
    fora = [v for v in ordem if not 0 <= v < H.n]
    if fora:
        return Verdict(False, fora[0], "vertice fora do grafo")
    cor_alvo = colour
    for janela in _janelas(ordem, H.k, ciclica):
        cor = H.colour_of(janela)
        if cor is None:
            return Verdict(False, janela, "janela nao e aresta")
        if cor_alvo is None and monochromatic:
            cor_alvo = cor
        if cor_alvo is not None and cor != cor_alvo:
            return Verdict(False, janela, f"janela com cor {cor} != {cor_alvo}")
    return Verdict(True, extras={"colour": cor_alvo})


def verify_tight_cycle(
    H: ColouredKGraph,
    C: TightCycle,
    colour: Optional[int] = None,
    monochromatic: bool = False,
) -> Verdict:
    if C.degenerate:
        if len(C) > H.k:
            return Verdict(False, C.order, f"ciclo degenerado com mais de {H.k} vertices")
        fora = [v for v in C.order if not 0 <= v < H.n]
        if fora:
            return Verdict(False, fora[0], "vertice fora do grafo")
        return Verdict(True)
    if len(C) < H.k + 1:
        return Verdict(False, C.order, f"ciclo apertado exige ao menos {H.k + 1} vertices")
    if colour is None:
        colour = C.colour
    return _verificar_janelas(H, C.order, True, colour, monochromatic)


def verify_tight_path(H: ColouredKGraph, P: TightPath, colour: Optional[int] = None) -> Verdict:
    if len(P) < H.k:
        return Verdict(False, P.order, f"caminho apertado exige ao menos {H.k} vertices")
    return _verificar_janelas(H, P.order, False, colour, False)


def verify_rainbow_cycle(G: EdgeColouredMultigraph, C: RainbowCycle) -> Verdict:
    if len(set(C.colours)) != len(C.colours):
        return Verdict(False, C.colours, "cores repetidas: ciclo nao e arco-iris")
    for u, v, cor in C.edges():
        if cor not in G.edge_colours(u, v):
            return Verdict(False, (u, v, cor), "aresta ausente no multigrafo")
    return Verdict(True)


def verify_rainbow_path(G: EdgeColouredMultigraph, vertices: Sequence[int], colours: Sequence[Colour]) -> Verdict:
    if len(set(vertices)) != len(vertices):
        return Verdict(False, tuple(vertices), "caminho com vertice repetido")
    if len(colours) != len(vertices) - 1:
        return Verdict(False, tuple(colours), "numero de cores incompativel com o caminho")
    if len(set(colours)) != len(colours):
        return Verdict(False, tuple(colours), "cores repetidas: caminho nao e arco-iris")
    for i, cor in enumerate(colours):
        if cor not in G.edge_colours(vertices[i], vertices[i + 1]):
            return Verdict(False, (vertices[i], vertices[i + 1], cor), "aresta ausente no multigrafo")
    return Verdict(True)


# --------------------------------------------------------------------------------------
# Formato de intercambio
# --------------------------------------------------------------------------------------


def _parametros(tokens: Sequence[str], nlinha: int) -> Dict[str, str]:
    valores = {}
    for token in tokens:
        if "=" not in token:
            raise InputError(f"linha {nlinha}: esperado chave=valor, recebido {token!r}")
        chave, valor = token.split("=", 1)
        valores[chave] = valor
    return valores


def _linhas_uteis(texto: str):
    for nlinha, linha in enumerate(texto.splitlines(), start=1):
        conteudo = linha.split("#", 1)[0].strip()
        if conteudo:
            yield nlinha, conteudo


def _rotulo(bruto: str) -> Colour:
    try:
        return int(bruto)
    except ValueError:
        return bruto


def parse_hgraph(texto: str) -> ColouredKGraph:
    linhas = list(_linhas_uteis(texto))
    if not linhas or not linhas[0][1].startswith("HGRAPH"):
        raise InputError("linha 1: cabecalho HGRAPH ausente")
    nlinha, cabecalho = linhas[0]
    params = _parametros(cabecalho.split()[1:], nlinha)
    try:
        k, n, r = int(params["k"]), int(params["n"]), int(params["r"])
    except (KeyError, ValueError) as exc:
        raise InputError(f"linha {nlinha}: cabecalho precisa de k=, n= e r= inteiros") from exc

    arestas = []
    for nlinha, conteudo in linhas[1:]:
        tokens = conteudo.split()
        if not tokens[-1].startswith("c="):
            raise InputError(f"linha {nlinha}: aresta sem cor (c=...)")
        try:
            vertices = tuple(int(t) for t in tokens[:-1])
            cor = int(tokens[-1][2:])
        except ValueError as exc:
            raise InputError(f"linha {nlinha}: valores nao inteiros") from exc
        if len(vertices) != k:
            raise InputError(f"linha {nlinha}: aresta com {len(vertices)} vertices, esperado {k}")
        arestas.append((vertices, cor))
    try:
        return ColouredKGraph(k, n, r, arestas)
    except InputError as exc:
        raise InputError(f"HGRAPH invalido: {exc}") from exc


def parse_mgraph(texto: str) -> EdgeColouredMultigraph:
    linhas = list(_linhas_uteis(texto))
    if not linhas or not linhas[0][1].startswith("MGRAPH"):
        raise InputError("linha 1: cabecalho MGRAPH ausente")
    nlinha, cabecalho = linhas[0]
    params = _parametros(cabecalho.split()[1:], nlinha)
    try:
        n = int(params["n"])
    except (KeyError, ValueError) as exc:
        raise InputError(f"linha {nlinha}: cabecalho precisa de n= inteiro") from exc

    arestas = []
    for nlinha, conteudo in linhas[1:]:
        tokens = conteudo.split()
        if len(tokens) != 3 or not tokens[2].startswith("c="):
            raise InputError(f"linha {nlinha}: esperado 'u v c=<rotulo>'")
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError as exc:
            raise InputError(f"linha {nlinha}: extremos nao inteiros") from exc
        arestas.append(MultiEdge(u, v, _rotulo(tokens[2][2:])))
    return EdgeColouredMultigraph(n, tuple(arestas))


def format_hgraph(H: ColouredKGraph) -> str:
    linhas = [f"HGRAPH k={H.k} n={H.n} r={H.r}"]
    linhas.extend(" ".join(str(v) for v in e) + f" c={c}" for e, c in H.colouring)
    return "\n".join(linhas) + "\n"


def format_mgraph(G: EdgeColouredMultigraph) -> str:
    linhas = [f"MGRAPH n={G.n}"]
    linhas.extend(f"{a.u} {a.v} c={a.colour}" for a in G.edges)
    return "\n".join(linhas) + "\n"


Instance = Union[ColouredKGraph, EdgeColouredMultigraph]


def parse_instance(texto: str) -> Instance:
    for _, conteudo in _linhas_uteis(texto):
        if conteudo.startswith("HGRAPH"):
            return parse_hgraph(texto)
        if conteudo.startswith("MGRAPH"):
            return parse_mgraph(texto)
        break
    raise InputError("Arquivo sem cabecalho HGRAPH/MGRAPH.")


def read_instance(caminho: Union[str, Path]) -> Instance:
    caminho = Path(caminho)
    try:
        texto = caminho.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"Nao foi possivel ler {caminho}: {exc}") from exc
    return parse_instance(texto)


def write_instance(instancia: Instance, caminho: Union[str, Path]) -> Path:
    caminho = Path(caminho)
    caminho.parent.mkdir(parents=True, exist_ok=True)
    texto = format_hgraph(instancia) if isinstance(instancia, ColouredKGraph) else format_mgraph(instancia)
    caminho.write_text(texto, encoding="utf-8")
    return caminho


def instance_from_dict(dados: Mapping[str, object]) -> Instance:
    if dados.get("tipo") == "MGRAPH":
        return EdgeColouredMultigraph.from_dict(dados)
    return ColouredKGraph.from_dict(dados)


# --------------------------------------------------------------------------------------
# Geradores
# --------------------------------------------------------------------------------------


def complete_kgraph(k: int, n: int, colour: int = 0, r: Optional[int] = None) -> ColouredKGraph:
    r = r if r is not None else colour + 1
    return ColouredKGraph(k, n, r, [(e, colour) for e in combinations(range(n), k)])


def random_coloured_kgraph(k: int, n: int, r: int, semente: int, density: float = 1.0) -> ColouredKGraph:
    if not 0 <= density <= 1:
        raise InputError(f"Densidade deve estar em [0, 1] (recebido {density}).")
    rng = rng_para(semente, "coloracao", k, n, r, density)
    arestas = []
    for e in combinations(range(n), k):
        if density >= 1 or rng.random() < density:
            arestas.append((e, rng.randrange(r)))
    return ColouredKGraph(k, n, r, arestas)


def random_multigraph(n: int, colours: int, p: float, semente: int) -> EdgeColouredMultigraph:
    """Cada par {u, v} recebe, para cada cor, uma aresta com probabilidade p."""
    rng = rng_para(semente, "multigrafo", n, colours, p)
    arestas = []
    for u, v in combinations(range(n), 2):
        for c in range(colours):
            if rng.random() < p:
                arestas.append(MultiEdge(u, v, c))
    return EdgeColouredMultigraph(n, tuple(arestas))
