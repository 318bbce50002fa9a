import random
from itertools import combinations, product

import pytest

from absorcao_arco_iris import (
    Bowtie,
    CycleSystem,
    RainbowPath,
    RainbowPathSystem,
    Reservation,
    ReservationStage,
    USet,
    bowtie_is_g_maximal,
    bowtie_shadows,
    build_bowtie,
    check_dg_partition,
    check_g_maximal,
    close_path_system,
    close_rainbow_path,
    expand_uset,
    find_dg_partition,
    greedy_rainbow_matching,
    rainbow_cycle_system,
    rainbow_path_system,
    u_set,
    verify_rainbow_cycle_system,
    verify_rainbow_path_system,
)
from falhas import InputError, StagedFailure, StepFailure
from modelo_hipergrafo import (
    EdgeColouredMultigraph,
    MultiEdge,
    degree_profile,
    random_multigraph,
    verify_rainbow_cycle,
)


def _multigrafo(n, *arestas):
    return EdgeColouredMultigraph(n, tuple(MultiEdge(u, v, c) for u, v, c in arestas))


def _circulante(n, cores, deslocamentos):
    """Cada cor e o mesmo grafo circulante com os deslocamentos dados."""
    return EdgeColouredMultigraph(
        n,
        tuple(MultiEdge(i, (i + s) % n, c) for c in range(cores) for s in deslocamentos for i in range(n)),
    )


def _estrela():
    return _multigrafo(6, (0, 1, "a"), (0, 2, "a"), (0, 3, "a"), (0, 4, "a"), (0, 5, "b"))


def _gravata_dupla():
    arestas = [(0, i, "a") for i in range(1, 5)] + [(0, i, "b") for i in range(5, 9)]
    return _multigrafo(9, *arestas)


def _gadget_fechamento():
    """Centro 0 (a: 1, 2; b: 3, 4) e o caminho 5 -c- 6 -d- 7 -e- 8 com atalhos por 1, 3 e 4."""
    return _multigrafo(
        9,
        (0, 1, "a"), (0, 2, "a"), (0, 3, "b"), (0, 4, "b"),
        (5, 6, "c"), (6, 7, "d"), (7, 8, "e"),
        (3, 6, "c"), (3, 7, "e"), (1, 6, "c"), (4, 7, "e"),
    )


def _todos_os_multigrafos(n, cores):
    pares = list(combinations(range(n), 2))
    for mascaras in product(range(1 << len(pares)), repeat=cores):
        yield EdgeColouredMultigraph(
            n,
            tuple(
                MultiEdge(u, v, c)
                for c, mascara in enumerate(mascaras)
                for i, (u, v) in enumerate(pares)
                if mascara >> i & 1
            ),
        )


def _completo_menos_emparelhamentos(n, cores, semente):
    """K_n em cada cor, menos um emparelhamento aleatorio por cor (grau >= n - 2)."""
    rng = random.Random(semente)
    arestas = []
    for c in range(cores):
        ordem = list(range(n))
        rng.shuffle(ordem)
        tirar = {frozenset(ordem[i:i + 2]) for i in range(0, 2 * rng.randrange(n // 2 + 1), 2)}
        arestas += [(u, v, c) for u, v in combinations(range(n), 2) if frozenset((u, v)) not in tirar]
    return _multigrafo(n, *arestas)


def _confere_emparelhamento(G):
    cores = G.colours
    if cores and degree_profile(G).delta_mon < 2 * len(cores) - 1:
        with pytest.raises(InputError, match="2\\|φ\\| - 1"):
            greedy_rainbow_matching(G)
        return
    emparelhamento = greedy_rainbow_matching(G)
    assert len(emparelhamento) == len(cores)
    veredito = verify_rainbow_cycle_system(G, CycleSystem([], emparelhamento))
    assert veredito, veredito.detail


# ============================================================
# Emparelhamento e sistema de caminhos
# ============================================================


class TestEmparelhamentoArcoIris:
    def test_uma_aresta_por_cor(self):
        G = _circulante(16, 3, range(1, 8))
        emparelhamento = greedy_rainbow_matching(G)
        assert [a.colour for a in emparelhamento] == [0, 1, 2]
        vertices = [v for a in emparelhamento for v in (a.u, a.v)]
        assert len(vertices) == len(set(vertices))

    def test_grau_insuficiente(self):
        G = _multigrafo(3, (0, 1, "a"), (1, 2, "b"))
        with pytest.raises(InputError, match="2\\|φ\\| - 1"):
            greedy_rainbow_matching(G)

    def test_subconjunto_de_cores(self):
        G = _multigrafo(3, (0, 1, "a"), (1, 2, "b"))
        assert greedy_rainbow_matching(G, ["a"]) == [MultiEdge(0, 1, "a")]

    def test_cor_ausente(self):
        with pytest.raises(InputError, match="Cores sem arestas"):
            greedy_rainbow_matching(_estrela(), ["z"])

    @pytest.mark.parametrize("n,cores", [(3, 1), (3, 2), (4, 1), (4, 2), (5, 1)])
    def test_exaustivo_em_grafos_pequenos(self, n, cores):
        for G in _todos_os_multigrafos(n, cores):
            _confere_emparelhamento(G)

    @pytest.mark.parametrize("semente", range(10))
    @pytest.mark.parametrize("n", [8, 12])
    def test_multigrafos_aleatorios(self, n, semente):
        _confere_emparelhamento(random_multigraph(n, 3, 0.8, semente))


class TestSistemaDeCaminhos:
    def test_fusao_reduz_ate_o_limite(self):
        G = _circulante(16, 3, range(1, 8))
        sistema = rainbow_path_system(G, 12)
        assert len(sistema) <= 2 * G.n / 12
        assert sistema.merges == 1
        veredito = verify_rainbow_path_system(G, sistema)
        assert veredito, veredito.detail
        assert veredito.extras["covers"]

    @pytest.mark.parametrize("semente", range(6))
    def test_fusao_em_instancias_aleatorias(self, semente):
        G = _completo_menos_emparelhamentos(16, 3, semente)
        sistema = rainbow_path_system(G, 12)
        assert sistema.merges >= 1
        assert len(sistema) <= 2 * G.n / 12
        veredito = verify_rainbow_path_system(G, sistema)
        assert veredito, veredito.detail
        assert veredito.extras["covers"]

    def test_hipotese_d(self):
        G = _circulante(16, 3, range(1, 8))
        with pytest.raises(InputError, match="4\\|φ\\|"):
            rainbow_path_system(G, 8)

    def test_caminhos_que_compartilham_vertice(self):
        G = _circulante(16, 3, range(1, 8))
        sistema = rainbow_path_system(G, 12)
        sistema.paths.append(RainbowPath(sistema.paths[0].vertices[:2], (99,)))
        assert not verify_rainbow_path_system(G, sistema)


# ============================================================
# Conjuntos U e g-maximalidade
# ============================================================


class TestUSet:
    def test_estrela(self):
        assert u_set(_estrela(), 0, {"a"}, ()) == frozenset({0, 1, 2, 3, 4})

    def test_interior_restrito_a_w(self):
        G = _multigrafo(3, (0, 1, "a"), (1, 2, "b"))
        assert u_set(G, 0, {"a", "b"}, ()) == frozenset({0, 1})
        assert u_set(G, 0, {"a", "b"}, {1}) == frozenset({0, 1, 2})

    def test_vertice_desconhecido(self):
        with pytest.raises(InputError, match="desconhecido"):
            u_set(_estrela(), 9, {"a"}, ())


class TestExpansao:
    def test_g_grande_nao_expande(self):
        U = expand_uset(_estrela(), 0, "a", 2)
        assert U.members == frozenset({0, 1, 2, 3, 4})
        assert U.iterations == 0
        veredito = check_g_maximal(U)
        assert veredito, veredito.detail
        assert veredito.extras["skeleton_in_u"]
        assert veredito.extras["within_bounds"]

    def test_g_um_absorve_a_outra_cor(self):
        U = expand_uset(_estrela(), 0, "a", 1)
        assert U.colours == frozenset({"a", "b"})
        assert U.members == frozenset(range(6))
        assert U.growth == (1,)
        assert check_g_maximal(U)

    def test_u_nao_maximal_e_detectado(self):
        veredito = check_g_maximal(USet.of(_estrela(), 0, {"a"}, (), 1))
        assert not veredito
        assert "caso 1" in veredito.detail

    def test_raiz_fora_de_v_estrela(self):
        with pytest.raises(InputError, match="V\\*"):
            expand_uset(_estrela(), 1, "a", 1)

    def test_cor_que_nao_incide(self):
        with pytest.raises(InputError, match="nao incide"):
            expand_uset(_estrela(), 0, "z", 1)


# ============================================================
# Gravatas e (d, g)-particoes
# ============================================================


class TestExpansaoAleatoria:
    @pytest.mark.parametrize("semente", range(8))
    @pytest.mark.parametrize("g", [1, 2, 3])
    def test_expansao_termina_g_maximal(self, semente, g):
        G = random_multigraph(8, 3, 0.5, semente)
        v = min(G.v_star)
        c = min(G.colours_at(v))
        U = expand_uset(G, v, c, g)
        assert v in U.members
        assert c in U.colours
        veredito = check_g_maximal(U, semente=semente)
        assert veredito, veredito.detail


class TestGravata:
    def test_duas_estrelas(self):
        G = _gravata_dupla()
        B = build_bowtie(G, 0, "a", "b", 2, strict=False)
        assert B.C1 == frozenset({"a"})
        assert B.C2 == frozenset({"b"})
        u1, u2 = B.u_sets(G)
        assert len(u1) == len(u2) == 5
        assert bowtie_is_g_maximal(G, B, 2)

    def test_cores_iguais(self):
        with pytest.raises(InputError, match="distintas"):
            build_bowtie(_gravata_dupla(), 0, "a", "a", 1)

    def test_estrito_exige_grau(self):
        with pytest.raises(InputError, match="g \\+ 3n/g"):
            build_bowtie(_gravata_dupla(), 0, "a", "b", 2)

    def test_lados_que_se_intersectam(self):
        with pytest.raises(InputError, match="C1 e C2"):
            Bowtie(0, {"a"}, (), {"a", "b"}, ())

    def test_serializacao(self):
        B = Bowtie(0, {"a"}, {3}, {"b"}, ())
        assert Bowtie.from_dict(B.to_dict()) == B


class TestParticaoDG:
    def test_uma_gravata_cobre_v_estrela(self):
        G = _gravata_dupla()
        particao = find_dg_partition(G, 2, 1, strict=False)
        assert len(particao) == 1
        assert particao.verdict
        assert particao.verdict.extras["size_bound"]
        assert particao.notes["hypotheses"]["d_4g"] is False

    def test_hipoteses_no_modo_estrito(self):
        with pytest.raises(InputError, match="d_4g"):
            find_dg_partition(_gravata_dupla(), 2, 1)

    def test_lados_pequenos_demais(self):
        G = _gravata_dupla()
        B = Bowtie(0, {"a"}, (), {"b"}, ())
        veredito = check_dg_partition(G, [B], 10, 1)
        assert not veredito
        assert veredito.witness == "P1"


# ============================================================
# Fechamento de caminhos
# ============================================================


class TestFechamento:
    GRAVATA = Bowtie(0, {"a"}, (), {"b"}, ())
    CAMINHO = RainbowPath((5, 6, 7, 8), ("c", "d", "e"))

    def test_b1_troca_as_pontas(self):
        G = _gadget_fechamento()
        ciclo = close_rainbow_path(G, self.GRAVATA, self.CAMINHO)
        assert ciclo.vertices == (3, 6, 7)
        assert set(ciclo.colours) == {"c", "d", "e"}
        assert verify_rainbow_cycle(G, ciclo)

    def test_b2_passa_pelo_centro(self):
        G = _gadget_fechamento()
        ciclo = close_rainbow_path(G, self.GRAVATA, self.CAMINHO, mode="B2")
        assert 0 in ciclo.vertices
        assert {"c", "d", "e"} <= set(ciclo.colours) <= {"a", "b", "c", "d", "e"}
        assert verify_rainbow_cycle(G, ciclo)

    def test_b1_sem_candidato_fora_de_s(self):
        with pytest.raises(StepFailure):
            close_rainbow_path(_gadget_fechamento(), self.GRAVATA, self.CAMINHO, S={3})

    def test_caminho_curto(self):
        with pytest.raises(InputError, match="ao menos 3"):
            close_rainbow_path(_gadget_fechamento(), self.GRAVATA, RainbowPath((5, 6), ("c",)))

    def test_interior_fora_de_u2(self):
        with pytest.raises(InputError, match="U2\\*"):
            close_rainbow_path(_gadget_fechamento(), self.GRAVATA, RainbowPath((2, 8, 5), ("x", "y")))

    def test_u2_grande_para_d(self):
        with pytest.raises(InputError, match="3d/4"):
            close_rainbow_path(_gadget_fechamento(), self.GRAVATA, self.CAMINHO, d=1)

    def test_b2_centro_em_s(self):
        with pytest.raises(StepFailure, match="centro da gravata proibido"):
            close_rainbow_path(_gadget_fechamento(), self.GRAVATA, self.CAMINHO, S={0}, mode="B2")

    def test_modo_desconhecido(self):
        with pytest.raises(InputError, match="B1 ou B2"):
            close_rainbow_path(_gadget_fechamento(), self.GRAVATA, self.CAMINHO, mode="B3")


# ============================================================
# Sistema de ciclos arco-iris
# ============================================================


class TestSistemaDeCiclos:
    def test_poucas_cores_usa_emparelhamento(self):
        G = _circulante(96, 3, range(1, 25))
        sistema = rainbow_cycle_system(G, "1/2")
        assert sistema.branch == "matching"
        assert sistema.count == 3
        assert verify_rainbow_cycle_system(G, sistema)

    def test_uma_cor(self):
        G = _circulante(32, 1, range(1, 9))
        sistema = rainbow_cycle_system(G, "1/2")
        assert sistema.count == 1
        assert verify_rainbow_cycle_system(G, sistema)

    def test_grafo_vazio(self):
        sistema = rainbow_cycle_system(EdgeColouredMultigraph(5), "1/2")
        assert sistema.branch == "empty"
        assert sistema.count == 0

    def test_grau_minimo_insuficiente(self):
        with pytest.raises(InputError, match="δ0·n"):
            rainbow_cycle_system(_circulante(32, 1, range(1, 9)), 1)

    def test_cores_demais(self):
        with pytest.raises(InputError, match="\\|φ\\|"):
            rainbow_cycle_system(_circulante(96, 3, range(1, 25)), "1/8")

    def test_absorcao_forcada(self):
        G = _circulante(96, 3, range(1, 25))
        try:
            sistema = rainbow_cycle_system(G, "1/2", force_absorption=True)
        except StagedFailure as exc:
            assert exc.estagio in {"reserva", "sistema_de_caminhos", "emparelhamento", "fechamento"}
        else:
            assert sistema.branch == "absorption"
            assert verify_rainbow_cycle_system(G, sistema)

    def test_cor_repetida_reprovada(self):
        G = _multigrafo(4, (0, 1, "a"), (2, 3, "a"))
        sistema = CycleSystem([], [MultiEdge(0, 1, "a"), MultiEdge(2, 3, "a")])
        veredito = verify_rainbow_cycle_system(G, sistema)
        assert not veredito
        assert "arco-iris" in veredito.detail

    def test_serializacao(self):
        G = _circulante(32, 1, range(1, 9))
        sistema = rainbow_cycle_system(G, "1/2")
        assert verify_rainbow_cycle_system(G, CycleSystem.from_dict(sistema.to_dict()))


# ============================================================
# Fechamento do sistema de caminhos
# ============================================================


def _reserva_do_gadget(G, gravata):
    """Uma reserva de um estagio com a gravata coberta (fecha pelo centro)."""
    nucleo = G.without_colours(gravata.colours)
    estagio = ReservationStage(
        index=1,
        family=[gravata],
        host=G,
        graph=nucleo,
        residual=nucleo,
        shadows=bowtie_shadows(G, [gravata]),
        covered_children=[0],
    )
    return Reservation(G, nucleo, [estagio], d=1, g=1)


class TestFechamentoDoSistema:
    GRAVATA = Bowtie(0, {"a"}, (), {"b"}, ())
    CAMINHO = RainbowPath((5, 6, 7, 8), ("c", "d", "e"))

    def test_sombra_cobre_o_interior(self):
        reserva = _reserva_do_gadget(_gadget_fechamento(), self.GRAVATA)
        assert reserva.reserved_colours == {"a", "b"}
        assert reserva.reserved_vertices == {0}
        assert reserva.closer_for(self.CAMINHO) == (0, 0, "B2")

    def test_um_caminho_fechado_pelo_centro(self):
        G = _gadget_fechamento()
        sistema = close_path_system(G, [_reserva_do_gadget(G, self.GRAVATA)], RainbowPathSystem([self.CAMINHO]))
        assert sistema.branch == "absorption"
        assert len(sistema.cycles) == 1
        assert sistema.cycles[0].vertices == (1, 0, 3, 7, 6)
        assert set(sistema.cycles[0].colours) == {"a", "b", "c", "d", "e"}
        assert sistema.degenerate_edges == []
        assert verify_rainbow_cycle_system(G, sistema)

    def test_cor_restante_evita_o_centro(self):
        G = _multigrafo(9, *((a.u, a.v, a.colour) for a in _gadget_fechamento().edges), (0, 2, "f"), (2, 4, "f"))
        sistema = close_path_system(G, [_reserva_do_gadget(G, self.GRAVATA)], RainbowPathSystem([self.CAMINHO]))
        assert 0 in sistema.cycles[0].vertices
        assert sistema.degenerate_edges == [MultiEdge(2, 4, "f")]
        assert verify_rainbow_cycle_system(G, sistema)

    def test_cor_restante_so_no_centro(self):
        G = _multigrafo(9, *((a.u, a.v, a.colour) for a in _gadget_fechamento().edges), (0, 2, "f"))
        with pytest.raises(StagedFailure) as exc:
            close_path_system(G, [_reserva_do_gadget(G, self.GRAVATA)], RainbowPathSystem([self.CAMINHO]))
        assert exc.value.estagio == "emparelhamento"

    def test_caminho_curto_vira_aresta(self):
        G = _multigrafo(9, *((a.u, a.v, a.colour) for a in _gadget_fechamento().edges), (2, 4, "f"))
        caminhos = RainbowPathSystem([self.CAMINHO, RainbowPath((2, 4), ("f",))])
        sistema = close_path_system(G, [_reserva_do_gadget(G, self.GRAVATA)], caminhos)
        assert sistema.degenerate_edges == [MultiEdge(2, 4, "f")]
        assert len(sistema.cycles) == 1
        assert verify_rainbow_cycle_system(G, sistema)

    def test_reservas_insuficientes(self):
        G = _gadget_fechamento()
        with pytest.raises(StagedFailure) as exc:
            close_path_system(G, [], RainbowPathSystem([self.CAMINHO]))
        assert (exc.value.estagio, exc.value.etapa) == ("fechamento", "reservas_insuficientes")

    def test_centro_ocupado_por_outro_caminho(self):
        G = _gadget_fechamento()
        caminhos = RainbowPathSystem([self.CAMINHO, RainbowPath((0, 2), ("a",))])
        with pytest.raises(StagedFailure) as exc:
            close_path_system(G, [_reserva_do_gadget(G, self.GRAVATA)], caminhos)
        assert (exc.value.estagio, exc.value.etapa) == ("fechamento", "caminho_0")
