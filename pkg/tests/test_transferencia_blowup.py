import math
from fractions import Fraction

import pytest

from falhas import InputError
from modelo_hipergrafo import ColouredKGraph, RainbowCycle, complete_kgraph, verify_tight_cycle
from transferencia_blowup import (
    KPartiteGraph,
    RespectsWitness,
    check_sliced_partition,
    clean_to_robust_subgraph,
    colour_slice,
    complete_kpartite,
    count_k2_blowups,
    permutation_slice,
    rainbow_cycle_to_tight_cycle,
    random_kpartite,
    respecting_pairs,
    sliced_size,
    verify_respects,
)


def _hospedeiro_fatiado():
    """3-partido completo X1 = 0..5, X2 = 6..11, Z = 12..17; a cor depende so de z."""
    arestas = [
        ((a, b, z), 0 if z < 15 else 1)
        for a in range(6)
        for b in range(6, 12)
        for z in range(12, 18)
    ]
    return ColouredKGraph(3, 18, 2, arestas)


# ============================================================
# Grafos k-partidos e contagem de K(2)
# ============================================================


class TestKPartite:
    def test_aresta_fora_da_ordem_das_classes(self):
        with pytest.raises(InputError, match="um vertice por classe"):
            KPartiteGraph(((0, 1), (2, 3)), frozenset({(2, 0)}))

    def test_classes_que_se_intersectam(self):
        with pytest.raises(InputError, match="Classe 2"):
            KPartiteGraph(((0, 1), (1, 2)))

    def test_a_partir_de_k_grafo(self):
        H = complete_kgraph(3, 6)
        P = KPartiteGraph.from_kgraph(H, [[0, 1], [2, 3], [4, 5]])
        assert len(P) == 8
        assert P.link(4).k == 2


class TestContagemBlowup:
    @pytest.mark.parametrize("k,n", [(2, 3), (3, 2), (3, 3)])
    def test_completo(self, k, n):
        contagem = count_k2_blowups(complete_kpartite(k, n))
        assert contagem.count == math.comb(n, 2) ** k
        assert contagem.ordered == contagem.count * 2 ** k
        assert contagem.meets_bound
        assert all(contagem.moment_checks)
        assert contagem.moments == [n ** (k + j) for j in range(k + 1)]

    @pytest.mark.parametrize("semente", [1, 2, 3])
    def test_cota_de_cauchy_schwarz_em_hospedeiros_aleatorios(self, semente):
        contagem = count_k2_blowups(random_kpartite(3, 3, 0.6, semente))
        assert contagem.meets_bound
        assert len(contagem.moment_checks) == 3

    def test_sem_momentos(self):
        contagem = count_k2_blowups(complete_kpartite(2, 3), moments=False)
        assert contagem.moments == []


class TestLimpeza:
    def test_gama_pequeno_mantem_tudo(self):
        H = complete_kpartite(2, 3)
        limpo = clean_to_robust_subgraph(H, Fraction(1, 2))
        assert len(limpo.subgraph) == 9
        assert limpo.copies == 9
        assert not limpo.empty

    def test_gama_grande_esvazia(self):
        limpo = clean_to_robust_subgraph(complete_kpartite(2, 3), 1)
        assert limpo.empty
        assert limpo.to_dict()["copies"] == 0

    def test_ordem_embaralhada_nao_muda_resultado(self):
        H = random_kpartite(2, 4, 0.7, semente=5)
        a = clean_to_robust_subgraph(H, Fraction(1, 4))
        b = clean_to_robust_subgraph(H, Fraction(1, 4), semente=9)
        assert a.subgraph == b.subgraph


# ============================================================
# Fatias por permutacao e por cor
# ============================================================


class TestFatiaPorPermutacao:
    def test_completo_com_identidade(self):
        fatia = permutation_slice(complete_kpartite(3, 4))
        assert len(fatia.edges) == 4
        assert fatia.expectation == 4

    def test_amostras_no_completo_nao_variam(self):
        fatia = permutation_slice(complete_kpartite(3, 4), semente=1, amostras=30)
        assert fatia.mean == 4
        assert fatia.within()
        assert fatia.histogram() == {4: 30}

    def test_amostras_aleatorias(self):
        H = random_kpartite(2, 6, 0.5, semente=3)
        fatia = permutation_slice(H, semente=2, amostras=200)
        assert fatia.expectation == Fraction(len(H), 6)
        assert sum(fatia.histogram().values()) == 200
        assert fatia.to_dict()["samples"] == 200

    def test_sigma_invalida(self):
        with pytest.raises(InputError, match="permutacao"):
            permutation_slice(complete_kpartite(2, 3), sigmas=[[0, 0, 1]])


class TestFatiaPorCor:
    def test_particao_fatiada(self):
        H = _hospedeiro_fatiado()
        classes = [list(range(6)), list(range(6, 12)), list(range(12, 18))]
        sp = colour_slice(H, classes)
        assert sp.size == sliced_size(3, 2, 6) == 2
        assert sp.colour_classes == {0: [12, 13, 14], 1: [15, 16, 17]}
        veredito = check_sliced_partition(H, classes, sp)
        assert veredito, veredito.detail

    def test_fatias_adulteradas(self):
        H = _hospedeiro_fatiado()
        classes = [list(range(6)), list(range(6, 12)), list(range(12, 18))]
        sp = colour_slice(H, classes)
        sp.leftover[0] = []
        assert not check_sliced_partition(H, classes, sp)

    def test_hospedeiro_incompleto(self):
        H = _hospedeiro_fatiado().without_edges([(0, 6, 12)])
        with pytest.raises(InputError, match="k-partido completo"):
            colour_slice(H, [list(range(6)), list(range(6, 12)), list(range(12, 18))])


# ============================================================
# Pares respeitosos e conversao arco-iris -> apertado
# ============================================================


class TestParesRespeitosos:
    def test_cadeia_completa(self):
        H = _hospedeiro_fatiado()
        pares = respecting_pairs(H, list(range(12)), list(range(12, 18)))
        assert pares.checks == {"A1": True, "A2": True, "A3": True, "A4": True}
        assert sorted(pares.witnesses) == [0, 1]
        assert pares.delta_mon == {0: 1, 1: 1}

    def test_testemunha_serializada_reverifica(self):
        H = _hospedeiro_fatiado()
        W = respecting_pairs(H, list(range(12)), list(range(12, 18))).witnesses[0]
        copia = RespectsWitness.from_dict(W.to_dict())
        assert verify_respects(copia)

    def test_aresta_removida_do_hospedeiro(self):
        H = _hospedeiro_fatiado()
        W = respecting_pairs(H, list(range(12)), list(range(12, 18))).witnesses[0]
        a = W.graph.edges[0]
        W.host = H.without_edges([(W.classes[0][a.u], W.classes[1][a.u], a.colour)])
        veredito = verify_respects(W)
        assert not veredito
        assert "falta a aresta" in veredito.detail

    def test_x_e_z_disjuntos(self):
        with pytest.raises(InputError, match="disjuntos"):
            respecting_pairs(_hospedeiro_fatiado(), list(range(13)), list(range(12, 18)))

    def test_ciclo_arco_iris_vira_ciclo_apertado(self):
        H = _hospedeiro_fatiado()
        W = respecting_pairs(H, list(range(12)), list(range(12, 18))).witnesses[0]
        z1, z2 = W.colour_class[:2]
        ciclo = rainbow_cycle_to_tight_cycle(W, RainbowCycle((0, 1), (z1, z2)))
        assert len(ciclo.order) == 6
        assert verify_tight_cycle(H, ciclo, colour=0, monochromatic=True)

    def test_ciclo_que_nao_e_arco_iris(self):
        H = _hospedeiro_fatiado()
        W = respecting_pairs(H, list(range(12)), list(range(12, 18))).witnesses[0]
        z = W.colour_class[0]
        with pytest.raises(InputError, match="arco-iris"):
            rainbow_cycle_to_tight_cycle(W, RainbowCycle((0, 1), (z, z)))
