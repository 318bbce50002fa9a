import random
from itertools import combinations, permutations

import pytest

from ciclos_apertados import check_partition, cover_as_partition, find_tight_cycle, greedy_mono_cover, lower_bound_instance
from falhas import InputError, SizeGuardError
from modelo_hipergrafo import (
    EdgeColouredMultigraph,
    MultiEdge,
    TightCycle,
    complete_kgraph,
    random_coloured_kgraph,
    verify_rainbow_cycle,
    verify_tight_cycle,
)
from oraculo import enumerate_tight_cycles, iter_rainbow_cycles, min_mono_partition, min_rainbow_cycle_system


# ============================================================
# Particao monocromatica minima
# ============================================================


class TestParticaoMinima:
    @pytest.mark.parametrize("k,r", [(2, 2), (3, 2), (2, 3)])
    def test_cota_inferior_e_exata(self, k, r):
        H = lower_bound_instance(k, r)
        resultado = min_mono_partition(H)
        assert resultado.count == r
        assert check_partition(H, resultado.partition)

    def test_completo_monocromatico(self):
        resultado = min_mono_partition(complete_kgraph(3, 6))
        assert resultado.count == 1

    def test_sem_arestas_usa_degenerados(self):
        H = random_coloured_kgraph(3, 7, 2, semente=1, density=0.0)
        resultado = min_mono_partition(H)
        assert resultado.count == 3
        assert all(p.degenerate for p in resultado.partition)

    @pytest.mark.parametrize("semente", [4, 5])
    def test_sanduiche_com_a_cobertura_gulosa(self, semente):
        H = random_coloured_kgraph(3, 8, 2, semente)
        oraculo = min_mono_partition(H)
        particao = cover_as_partition(H, greedy_mono_cover(H, 0.2))
        assert check_partition(H, particao)
        assert oraculo.count <= len(particao)

    @pytest.mark.parametrize("semente", range(10))
    def test_invariante_por_reetiquetagem(self, semente):
        H = random_coloured_kgraph(3, 7, 2, semente=2)
        mapa = list(range(H.n))
        random.Random(semente).shuffle(mapa)
        R = H.relabel(mapa)
        resultado = min_mono_partition(R)
        assert resultado.count == min_mono_partition(H).count
        assert check_partition(R, resultado.partition)

    def test_guarda_de_tamanho(self):
        with pytest.raises(SizeGuardError, match="greedy_mono_cover"):
            min_mono_partition(complete_kgraph(3, 11))


# ============================================================
# Sistema arco-iris minimo
# ============================================================


def _multigrafo(n, *arestas):
    return EdgeColouredMultigraph(n, tuple(MultiEdge(u, v, c) for u, v, c in arestas))


class TestSistemaArcoIris:
    def test_triangulo_arco_iris_e_um_ciclo(self):
        G = _multigrafo(3, (0, 1, 0), (1, 2, 1), (0, 2, 2))
        resultado = min_rainbow_cycle_system(G)
        assert resultado.count == 1
        assert len(resultado.cycles) == 1
        assert verify_rainbow_cycle(G, resultado.cycles[0])

    def test_arestas_disjuntas(self):
        G = _multigrafo(4, (0, 1, 0), (2, 3, 1))
        resultado = min_rainbow_cycle_system(G)
        assert resultado.count == 2
        assert resultado.cycles == []

    def test_arestas_paralelas_formam_ciclo_de_dois(self):
        G = _multigrafo(2, (0, 1, "a"), (0, 1, "b"))
        resultado = min_rainbow_cycle_system(G)
        assert resultado.count == 1
        assert resultado.cycles[0].vertices == (0, 1)

    def test_grafo_sem_cores(self):
        assert min_rainbow_cycle_system(EdgeColouredMultigraph(3)).count == 0

    def test_guarda_de_cores(self):
        G = _multigrafo(8, *[(i, i + 1, i) for i in range(7)])
        with pytest.raises(SizeGuardError):
            min_rainbow_cycle_system(G)


class TestIterRainbowCycles:
    def test_triangulo_sai_uma_vez(self):
        G = _multigrafo(3, (0, 1, 0), (1, 2, 1), (0, 2, 2))
        assert len(list(iter_rainbow_cycles(G))) == 1

    def test_triangulo_monocromatico_nao_e_arco_iris(self):
        G = _multigrafo(3, (0, 1, 0), (1, 2, 0), (0, 2, 0))
        assert list(iter_rainbow_cycles(G)) == []

    def test_comprimento_maximo(self):
        G = _multigrafo(4, (0, 1, 0), (1, 2, 1), (2, 3, 2), (0, 3, 3))
        assert len(list(iter_rainbow_cycles(G))) == 1
        assert list(iter_rainbow_cycles(G, max_length=3)) == []


# ============================================================
# Enumeracao
# ============================================================


class TestEnumeracao:
    def test_k4_tres_ciclos_canonicos(self):
        ciclos = enumerate_tight_cycles(complete_kgraph(3, 4), 4)
        assert len(ciclos) == 3
        assert len({c.order for c in ciclos}) == 3

    def test_grafo_vazio(self):
        H = random_coloured_kgraph(3, 5, 1, semente=0, density=0.0)
        assert enumerate_tight_cycles(H, 4) == []

    def test_restrito_a_k3(self):
        with pytest.raises(SizeGuardError, match="k=3"):
            enumerate_tight_cycles(complete_kgraph(4, 6), 5)

    def test_comprimento_curto(self):
        with pytest.raises(InputError, match="k\\+1"):
            enumerate_tight_cycles(complete_kgraph(3, 5), 3)


def _ciclos_por_forca_bruta(H, comprimento):
    canonicos = set()
    for suporte in combinations(range(H.n), comprimento):
        for ordem in permutations(suporte[1:]):
            ciclo = TightCycle((suporte[0], *ordem))
            if verify_tight_cycle(H, ciclo):
                canonicos.add(ciclo.canonical().order)
    return canonicos


class TestBuscaContraEnumeracao:
    @pytest.mark.parametrize("semente", range(5))
    @pytest.mark.parametrize("n,comprimento", [(5, 4), (6, 5), (7, 4), (7, 7)])
    def test_busca_concorda_com_forca_bruta(self, semente, n, comprimento):
        H = random_coloured_kgraph(3, n, 2, semente, density=0.6)
        enumerados = {c.order for c in enumerate_tight_cycles(H, comprimento)}
        assert enumerados == _ciclos_por_forca_bruta(H, comprimento)
        busca = find_tight_cycle(H, comprimento)
        assert busca.found == bool(enumerados)
        if busca.found:
            assert busca.cycle.canonical().order in enumerados

    @pytest.mark.parametrize("semente", range(3))
    def test_n10(self, semente):
        H = random_coloured_kgraph(3, 10, 3, semente, density=0.3)
        enumerados = enumerate_tight_cycles(H, 5)
        busca = find_tight_cycle(H, 5)
        assert busca.found == bool(enumerados)
        if busca.found:
            assert busca.cycle.canonical().order in {c.order for c in enumerados}
