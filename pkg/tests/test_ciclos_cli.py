import json

import pytest

from absorcao_arco_iris import CycleSystem
from ciclos_cli import (
    codigo_de_saida,
    destino_relatorio,
    gerar_instancia,
    interpretar_gerador,
    main,
)
from falhas import InputError
from modelo_hipergrafo import EdgeColouredMultigraph, MultiEdge, complete_kgraph, read_instance, write_instance


@pytest.fixture(autouse=True)
def ambiente_limpo(monkeypatch, tmp_path):
    monkeypatch.delenv("CICLOS_SAIDA", raising=False)
    monkeypatch.delenv("CICLOS_SEMENTE", raising=False)
    monkeypatch.chdir(tmp_path)


def _ler(caminho):
    return json.loads(caminho.read_text(encoding="utf-8"))


def _circulante(n, cores, deslocamentos):
    return EdgeColouredMultigraph(
        n,
        tuple(MultiEdge(i, (i + s) % n, c) for c in range(cores) for s in deslocamentos for i in range(n)),
    )


# ============================================================
# Especificacao de gerador
# ============================================================


class TestGeradores:
    def test_interpreta_parametros(self):
        assert interpretar_gerador("lower-bound:k=3,r=2,sizes=1/3") == (
            "lower-bound",
            {"k": "3", "r": "2", "sizes": "1/3"},
        )

    def test_gerador_desconhecido(self):
        with pytest.raises(InputError, match="Gerador desconhecido"):
            interpretar_gerador("nada:k=3")

    def test_parametro_sem_igual(self):
        with pytest.raises(InputError, match="sem '='"):
            interpretar_gerador("random-colouring:k")

    def test_tamanhos_da_cota_inferior(self):
        gerada = gerar_instancia("lower-bound", {"k": "3", "r": "2", "sizes": "1/3"}, 0)
        assert gerada.instancia.n == 4

    def test_parametro_obrigatorio(self):
        with pytest.raises(InputError, match="ausente: n"):
            gerar_instancia("random-colouring", {"k": "3", "r": "2"}, 0)


# ============================================================
# gen
# ============================================================


class TestGen:
    def test_cota_inferior(self, tmp_path, linhas_log):
        destino = tmp_path / "lb.txt"
        assert main(["gen", "lower-bound", "--k", "3", "--r", "2", "--out", str(destino), "--format", "text"]) == 0
        H = read_instance(destino)
        assert (H.k, H.n, H.r) == (3, 4, 2)
        assert any(linha.startswith("[OK] Instancia gravada em") for linha in linhas_log)

    def test_mesma_semente_mesmo_arquivo(self, tmp_path, linhas_log):
        a, b = tmp_path / "a.txt", tmp_path / "b.txt"
        for destino in (a, b):
            main(["gen", "random-colouring", "--k", "3", "--n", "7", "--r", "3", "--seed", "11", "--out", str(destino)])
        assert a.read_bytes() == b.read_bytes()

    def test_lote_com_sementes_derivadas(self, tmp_path, linhas_log):
        base = tmp_path / "lote" / "rc.txt"
        codigo = main(
            ["gen", "random-colouring", "--k", "3", "--n", "6", "--r", "2", "--count", "3", "--out", str(base)]
        )
        assert codigo == 0
        arquivos = sorted(p.name for p in base.parent.iterdir())
        assert arquivos == ["rc-000.txt", "rc-001.txt", "rc-002.txt"]
        resumos = [json.loads(linha) for linha in linhas_log if linha.startswith("{")]
        sementes = [r["seed"] for r in resumos if "arquivo" in r]
        assert len(sementes) == len(set(sementes)) == 3

    def test_ciclo_triangular_grava_artefato_verificavel(self, tmp_path, linhas_log):
        destino = tmp_path / "tri.txt"
        assert main(["gen", "triangle-cycle", "--k", "3", "--t", "3", "--out", str(destino)]) == 0
        artefato = tmp_path / "tri.json"
        assert _ler(artefato)["tipo"] == "TRIANGLE"
        assert main(["verify", str(artefato)]) == 0

    def test_count_invalido(self, linhas_log):
        assert main(["gen", "lower-bound", "--k", "3", "--r", "2", "--count", "0"]) == 2


# ============================================================
# run
# ============================================================


class TestRun:
    def test_cover_em_k6(self, tmp_path, linhas_log):
        instancia = write_instance(complete_kgraph(3, 6), tmp_path / "k6.txt")
        relatorio = tmp_path / "rel.json"
        assert main(["run", "cover", str(instancia), "--out", str(relatorio)]) == 0
        dados = _ler(relatorio)
        assert dados["status"] == "ok"
        assert len(dados["result"]["cycles"]) == 1
        assert dados["instance"]["n"] == 6
        assert dados["verdicts"]["partition"]["ok"]
        assert main(["verify", str(relatorio)]) == 0

    def test_relatorio_adulterado_e_reprovado(self, tmp_path, linhas_log):
        instancia = write_instance(complete_kgraph(3, 6), tmp_path / "k6.txt")
        relatorio = tmp_path / "rel.json"
        main(["run", "cover", str(instancia), "--out", str(relatorio)])
        dados = _ler(relatorio)
        dados["result"]["leftover"] = [0]
        relatorio.write_text(json.dumps(dados), encoding="utf-8")
        assert main(["verify", str(relatorio)]) == 1

    def test_oraculo_reproduz_a_construcao(self, tmp_path, linhas_log):
        relatorio = tmp_path / "oraculo.json"
        codigo = main(["run", "oracle-compare", "--gen", "lower-bound:k=2,r=3", "--out", str(relatorio)])
        assert codigo == 0
        resultado = _ler(relatorio)["result"]
        assert resultado["oracle"] == resultado["construction_r"] == 3
        assert resultado["matches_construction"]
        assert resultado["pipeline_count"] >= 3
        assert main(["verify", str(relatorio)]) == 0

    def test_resumo_em_texto(self, linhas_log):
        assert main(["run", "oracle-compare", "--gen", "lower-bound:k=3,r=2", "--format", "text"]) == 0
        assert any("r da construcao=2, minimo do oraculo=2" in linha for linha in linhas_log)

    def test_varias_fontes_geram_um_relatorio_cada(self, tmp_path, linhas_log):
        pasta = tmp_path / "relatorios"
        codigo = main(
            ["run", "cover", "--gen", "lower-bound:k=3,r=2", "--gen", "lower-bound:k=2,r=2", "--out", str(pasta)]
        )
        assert codigo == 0
        assert sorted(p.name for p in pasta.iterdir()) == [
            "cover-lower-bound-k-2-r-2.json",
            "cover-lower-bound-k-3-r-2.json",
        ]

    def test_gerador_invalido(self, linhas_log):
        assert main(["run", "cover", "--gen", "nada:k=3"]) == 2

    def test_sem_fontes(self, linhas_log):
        assert main(["run", "cover"]) == 2

    def test_orcamento_esgotado(self, tmp_path, linhas_log):
        instancia = write_instance(complete_kgraph(3, 9), tmp_path / "k9.txt")
        relatorio = tmp_path / "rel.json"
        assert main(["run", "cover", str(instancia), "--budget-nodes", "1", "--out", str(relatorio)]) == 3
        assert _ler(relatorio)["status"] == "orcamento"
        assert main(["verify", str(relatorio)]) == 1

    def test_pipeline_exige_tipo_de_instancia(self, tmp_path, linhas_log):
        instancia = write_instance(complete_kgraph(3, 6), tmp_path / "k6.txt")
        assert main(["run", "rainbow-system", str(instancia)]) == 2

    def test_sistema_arco_iris(self, tmp_path, linhas_log):
        instancia = write_instance(_circulante(96, 3, range(1, 25)), tmp_path / "circ.txt")
        relatorio = tmp_path / "arco.json"
        assert main(["run", "rainbow-system", str(instancia), "--delta0", "1/2", "--out", str(relatorio)]) == 0
        dados = _ler(relatorio)
        assert dados["result"]["branch"] == "matching"
        assert dados["result"]["count"] == 3
        assert main(["verify", str(relatorio)]) == 0

        sistema = tmp_path / "sistema.json"
        sistema.write_text(json.dumps(dados["result"]), encoding="utf-8")
        assert main(["verify", str(sistema)]) == 2
        assert main(["verify", str(sistema), "--instance", str(instancia)]) == 0
        assert CycleSystem.from_dict(dados["result"]).count == 3

    def test_emparelhamento_denso_com_meio_denso(self, tmp_path, linhas_log):
        relatorio = tmp_path / "denso.json"
        codigo = main(
            ["run", "dense-matching", "--gen", "random-colouring:k=3,n=12,r=1", "--half", "--out", str(relatorio)]
        )
        assert codigo == 0
        dados = _ler(relatorio)
        assert dados["result"]["mode"] == "semi"
        assert dados["result"]["half"]["mode"] == "half"
        assert main(["verify", str(relatorio)]) == 0

    def test_blowup_no_completo(self, tmp_path, linhas_log):
        relatorio = tmp_path / "blowup.json"
        codigo = main(
            [
                "run", "blowup", "--gen", "random-colouring:k=3,n=9,r=1",
                "--samples", "20", "--gamma", "1/100", "--out", str(relatorio),
            ]
        )
        assert codigo == 0
        resultado = _ler(relatorio)["result"]
        assert resultado["count"]["count"] == 27
        assert resultado["slice"]["samples"] == 20
        assert not resultado["cleaning"]["empty"]
        assert main(["verify", str(relatorio)]) == 0

    def test_workers_invalido(self, linhas_log):
        assert main(["run", "cover", "--gen", "lower-bound:k=3,r=2", "--workers", "0"]) == 2


# ============================================================
# stats e verify
# ============================================================


class TestStatsEVerify:
    def test_stats_sem_relatorios(self, linhas_log):
        assert main(["stats"]) == 2

    def test_stats_de_relatorios_de_run(self, tmp_path, linhas_log):
        pasta = tmp_path / "relatorios"
        main(["run", "cover", "--gen", "lower-bound:k=3,r=2", "--gen", "lower-bound:k=2,r=3", "--out", str(pasta)])
        prefixo = tmp_path / "saida" / "estatisticas"
        relatorios = [str(p) for p in sorted(pasta.iterdir())]
        assert main(["stats", *relatorios, "--out", str(prefixo)]) == 0
        assert (tmp_path / "saida" / "estatisticas.csv").is_file()
        assert (tmp_path / "saida" / "estatisticas.xlsx").is_file()
        assert (tmp_path / "saida" / "estatisticas-grafico.json").is_file()

    def test_artefato_desconhecido(self, tmp_path, linhas_log):
        caminho = tmp_path / "x.json"
        caminho.write_text(json.dumps({"tipo": "OUTRO"}), encoding="utf-8")
        assert main(["verify", str(caminho)]) == 2

    def test_pares_respeitosos_gerados(self, tmp_path, linhas_log):
        destino = tmp_path / "pares.txt"
        assert main(["gen", "respecting-pair", "--k", "3", "--n", "6", "--r", "1", "--out", str(destino)]) == 0
        assert main(["verify", str(tmp_path / "pares.json")]) == 0


# ============================================================
# Auxiliares
# ============================================================


def test_codigo_de_saida_prioriza_orcamento():
    assert codigo_de_saida([{"status": "ok", "ok": True}]) == 0
    assert codigo_de_saida([{"status": "ok", "ok": True}, {"status": "reprovado", "ok": False}]) == 1
    assert codigo_de_saida([{"status": "reprovado", "ok": False}, {"status": "orcamento", "ok": False}]) == 3


def test_destino_relatorio(tmp_path):
    assert destino_relatorio(None, "cover", "a.txt", True) is None
    assert destino_relatorio(str(tmp_path / "r.json"), "cover", "a.txt", True) == tmp_path / "r.json"
    assert destino_relatorio(str(tmp_path), "cover", "dir/a.txt", False) == tmp_path / "cover-a.json"
