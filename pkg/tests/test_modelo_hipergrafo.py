import pytest

from falhas import InputError
from modelo_hipergrafo import (
    ColouredKGraph,
    EdgeColouredMultigraph,
    MultiEdge,
    RainbowCycle,
    TightCycle,
    TightPath,
    colour_key,
    complete_kgraph,
    degree_profile,
    format_hgraph,
    format_mgraph,
    instance_from_dict,
    link_graph,
    parse_instance,
    random_coloured_kgraph,
    random_multigraph,
    read_instance,
    tight_components,
    verify_rainbow_cycle,
    verify_rainbow_path,
    verify_tight_cycle,
    verify_tight_path,
    write_instance,
)


# ============================================================
# Modelos
# ============================================================


class TestColouredKGraph:
    def test_normaliza_arestas(self):
        H = ColouredKGraph(3, 4, 2, [((2, 0, 1), 1), ((3, 1, 2), 0)])
        assert H.edges == ((0, 1, 2), (1, 2, 3))
        assert H.colour_of((1, 0, 2)) == 1
        assert H.colour_counts() == {0: 1, 1: 1}

    def test_aresta_duplicada(self):
        with pytest.raises(InputError, match="duplicada"):
            ColouredKGraph(3, 4, 1, [((0, 1, 2), 0), ((2, 1, 0), 0)])

    def test_aresta_com_tamanho_errado(self):
        with pytest.raises(InputError, match="nao tem 3 vertices"):
            ColouredKGraph(3, 4, 1, [((0, 1), 0)])

    def test_cor_fora_do_intervalo(self):
        with pytest.raises(InputError, match="fora de 0..1"):
            ColouredKGraph(3, 4, 2, [((0, 1, 2), 2)])

    def test_restrict_e_induced(self):
        H = ColouredKGraph(3, 5, 2, [((0, 1, 2), 0), ((1, 2, 3), 1), ((2, 3, 4), 0)])
        assert H.restrict(0).edges == ((0, 1, 2), (2, 3, 4))
        assert H.induced([1, 2, 3, 4]).edges == ((1, 2, 3), (2, 3, 4))

    def test_relabel_exige_permutacao(self):
        H = complete_kgraph(3, 4)
        with pytest.raises(InputError, match="permutacao"):
            H.relabel([0, 0, 1, 2])
        assert H.relabel([3, 2, 1, 0]).edges == H.edges


class TestEdgeColouredMultigraph:
    def test_laco_rejeitado(self):
        with pytest.raises(InputError, match="Laco"):
            EdgeColouredMultigraph(3, (MultiEdge(1, 1, 0),))

    def test_d_c_conta_vizinhos_distintos(self):
        G = EdgeColouredMultigraph(3, (MultiEdge(0, 1, "a"), MultiEdge(0, 2, "a"), MultiEdge(0, 1, "b")))
        assert G.d_c(0, "a") == 2
        assert G.d_c(0, "a", within=[1]) == 1
        assert G.edge_colours(0, 1) == {"a", "b"}
        assert G.colours == ("a", "b")

    def test_without_colours(self):
        G = EdgeColouredMultigraph(3, (MultiEdge(0, 1, 0), MultiEdge(1, 2, 1)))
        assert G.without_colours([0]).colours == (1,)


def test_colour_key_inteiros_antes_de_textos():
    assert sorted(["b", 2, "a", 0], key=colour_key) == [0, 2, "a", "b"]


# ============================================================
# Quantidades derivadas
# ============================================================


class TestTightComponents:
    def test_arestas_encadeadas_ficam_juntas(self):
        H = ColouredKGraph(3, 6, 1, [((0, 1, 2), 0), ((1, 2, 3), 0), ((3, 4, 5), 0)])
        assert tight_components(H) == [[(0, 1, 2), (1, 2, 3)], [(3, 4, 5)]]

    def test_restricao_de_cor(self):
        H = ColouredKGraph(3, 4, 2, [((0, 1, 2), 0), ((1, 2, 3), 1)])
        assert tight_components(H, restrict_colour=1) == [[(1, 2, 3)]]

    def test_grafo_vazio(self):
        assert tight_components(ColouredKGraph(3, 4, 1)) == []


def test_link_graph():
    H = complete_kgraph(3, 4)
    L = link_graph(H, 0)
    assert L.k == 2
    assert L.edges == ((1, 2), (1, 3), (2, 3))


class TestDegreeProfile:
    def test_caminho_de_duas_cores(self):
        G = EdgeColouredMultigraph(3, (MultiEdge(0, 1, "a"), MultiEdge(1, 2, "b")))
        perfil = degree_profile(G)
        assert perfil.delta_mon == 1
        assert perfil.v_star == frozenset({1})
        assert perfil.delta_mon_star == 1

    def test_v_estrela_vazio(self):
        G = EdgeColouredMultigraph(3, (MultiEdge(0, 1, 0), MultiEdge(1, 2, 0)))
        perfil = degree_profile(G)
        assert perfil.delta_mon == 1
        assert perfil.delta_mon_star is None
        assert perfil.to_dict()["v_star"] == []

    def test_grafo_sem_arestas(self):
        assert degree_profile(EdgeColouredMultigraph(4)).delta_mon is None


# ============================================================
# Verificadores
# ============================================================


class TestVerificadores:
    def test_ciclo_apertado_no_completo(self):
        H = complete_kgraph(3, 5)
        assert verify_tight_cycle(H, TightCycle((0, 1, 2, 3, 4)), monochromatic=True)

    def test_ciclo_curto_demais(self):
        H = complete_kgraph(3, 5)
        veredito = verify_tight_cycle(H, TightCycle((0, 1, 2)))
        assert not veredito
        assert "ao menos 4" in veredito.detail

    def test_ciclo_degenerado(self):
        H = complete_kgraph(3, 5)
        assert verify_tight_cycle(H, TightCycle((0, 4), degenerate=True))
        assert not verify_tight_cycle(H, TightCycle((0, 1, 2, 3), degenerate=True))

    def test_janela_ausente_aponta_testemunha(self):
        H = ColouredKGraph(3, 4, 1, [((0, 1, 2), 0), ((1, 2, 3), 0), ((0, 2, 3), 0)])
        veredito = verify_tight_cycle(H, TightCycle((0, 1, 2, 3)))
        assert not veredito
        assert sorted(veredito.witness) == [0, 1, 3]

    def test_cor_misturada(self):
        H = ColouredKGraph(3, 4, 2, [((0, 1, 2), 0), ((1, 2, 3), 1), ((0, 2, 3), 0), ((0, 1, 3), 0)])
        assert verify_tight_cycle(H, TightCycle((0, 1, 2, 3)))
        assert not verify_tight_cycle(H, TightCycle((0, 1, 2, 3)), monochromatic=True)

    def test_caminho_apertado(self):
        H = ColouredKGraph(3, 4, 1, [((0, 1, 2), 0), ((1, 2, 3), 0)])
        assert verify_tight_path(H, TightPath((0, 1, 2, 3)))
        assert not verify_tight_path(H, TightPath((0, 1)))

    def test_caminho_e_ciclo_arco_iris(self):
        G = EdgeColouredMultigraph(3, (MultiEdge(0, 1, 0), MultiEdge(1, 2, 1), MultiEdge(0, 2, 2)))
        assert verify_rainbow_path(G, [0, 1, 2], [0, 1])
        assert not verify_rainbow_path(G, [0, 1, 2], [0, 0])
        assert verify_rainbow_cycle(G, RainbowCycle((0, 1, 2), (0, 1, 2)))
        assert not verify_rainbow_cycle(G, RainbowCycle((0, 2, 1), (0, 1, 2)))

    def test_ciclo_de_dois_com_arestas_paralelas(self):
        G = EdgeColouredMultigraph(2, (MultiEdge(0, 1, "x"), MultiEdge(0, 1, "y")))
        assert verify_rainbow_cycle(G, RainbowCycle((0, 1), ("x", "y")))


# ============================================================
# Formato de intercambio e geradores
# ============================================================


class TestFormato:
    def test_hgraph_ida_e_volta(self, tmp_path):
        H = random_coloured_kgraph(3, 6, 2, semente=7, density=0.5)
        caminho = write_instance(H, tmp_path / "h.txt")
        assert read_instance(caminho) == H
        assert caminho.read_text(encoding="utf-8") == format_hgraph(H)

    def test_mgraph_com_rotulos_textuais(self):
        texto = "# comentario\nMGRAPH n=3\n0 1 c=azul\n1 2 c=verde  # fim\n"
        G = parse_instance(texto)
        assert G.colours == ("azul", "verde")
        assert format_mgraph(G) == "MGRAPH n=3\n0 1 c=azul\n1 2 c=verde\n"

    def test_erro_informa_linha(self):
        with pytest.raises(InputError, match="linha 2"):
            parse_instance("HGRAPH k=3 n=4 r=1\n0 1 c=0\n")

    def test_sem_cabecalho(self):
        with pytest.raises(InputError, match="HGRAPH/MGRAPH"):
            parse_instance("0 1 2 c=0\n")

    def test_arquivo_inexistente(self, tmp_path):
        with pytest.raises(InputError, match="Nao foi possivel ler"):
            read_instance(tmp_path / "nada.txt")

    def test_dicionario(self):
        G = random_multigraph(5, 2, 0.5, semente=3)
        assert instance_from_dict(G.to_dict()) == G


class TestGeradores:
    def test_coloracao_deterministica(self):
        assert random_coloured_kgraph(3, 7, 3, semente=11) == random_coloured_kgraph(3, 7, 3, semente=11)
        assert len(random_coloured_kgraph(3, 7, 3, semente=11)) == 35

    def test_densidade_invalida(self):
        with pytest.raises(InputError, match="Densidade"):
            random_coloured_kgraph(3, 5, 2, semente=1, density=1.5)

    def test_multigrafo_deterministico(self):
        assert random_multigraph(6, 3, 0.4, semente=5) == random_multigraph(6, 3, 0.4, semente=5)
