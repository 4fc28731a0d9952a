import numpy as np
import pytest
from PIL import Image

from ridgekit import synthetic
from ridgekit.cli import main
from ridgekit.templatefile import load_template, read_index


@pytest.fixture(scope="module")
def enrolled(small_corpus, tmp_path_factory):
    db = tmp_path_factory.mktemp("db")
    images = sorted(small_corpus.glob("*.png"))
    assert main(["enroll", *map(str, images), "--db", str(db)]) == 0
    return db


def test_enroll_writes_index(enrolled, small_corpus):
    rows = read_index(enrolled)
    assert len(rows) == len(list(small_corpus.glob("*.png"))) == 12
    assert all((enrolled / name).exists() for _, _, name in rows)


def test_enroll_skips_blank(tmp_path, small_corpus, caplog):
    blank = tmp_path / "9_1.png"
    Image.fromarray(np.full((300, 300), 210, np.uint8)).save(blank)
    db = tmp_path / "db"
    assert main(["enroll", str(blank), str(small_corpus / "101_1.png"), "--db", str(db)]) == 0
    assert [r[:2] for r in read_index(db)] == [(101, 1)]
    assert main(["enroll", str(blank), "--db", str(db)]) == 2
    assert "NoCoreFound" in caplog.text


def test_reenroll_overwrites(tmp_path, small_corpus):
    db = tmp_path / "db"
    img = str(small_corpus / "102_1.png")
    assert main(["enroll", img, "--db", str(db)]) == 0
    assert main(["enroll", img, "--db", str(db), "--finger", "102", "--impression", "1", "--radius", "150"]) == 0
    assert len(read_index(db)) == 1
    assert load_template(db / "102_1.fptl").radius == 150


def test_verify_self(enrolled, small_corpus, capsys):
    code = main(["verify", str(small_corpus / "101_2.png"), str(enrolled / "101_2.fptl")])
    out = capsys.readouterr().out.strip().split("\t")
    assert code == 0
    assert out[0] == "101_2" and out[1] == "101_2" and float(out[2]) == 0 and out[3] == "match"


def test_verify_other_finger_threshold_zero(enrolled, small_corpus, capsys):
    code = main(["verify", str(small_corpus / "101_1.png"), str(enrolled / "103_1.fptl"), "--threshold", "0"])
    assert code == 1
    assert capsys.readouterr().out.strip().endswith("no-match")


def test_verify_mismatched_k(enrolled, small_corpus, capsys):
    code = main(["verify", str(small_corpus / "101_1.png"), str(enrolled / "101_1.fptl"), "--descriptors", "120"])
    assert code == 2
    assert "IncompatibleTemplates" in capsys.readouterr().err


def test_identify_self(enrolled, small_corpus, capsys):
    assert main(["identify", str(small_corpus / "104_3.png"), "--db", str(enrolled)]) == 0
    cells = capsys.readouterr().out.strip().split("\t")
    assert cells[1] == "104_3" and float(cells[2]) == 0


def test_missing_file_exit_2(tmp_path, capsys):
    assert main(["verify", str(tmp_path / "none.png"), str(tmp_path / "none.fptl")]) == 2
    assert capsys.readouterr().err.startswith("ridgekit: error")


def test_inspect_all_stages(small_corpus, tmp_path):
    assert main(["inspect", str(small_corpus / "101_1.png"), "--out", str(tmp_path)]) == 0
    pgms = sorted(p.name for p in tmp_path.glob("*.pgm"))
    assert len(pgms) == 8 and pgms[0] == "01_enhanced.pgm" and pgms[-1] == "08_minutiae.pgm"
    lines = (tmp_path / "minutiae.csv").read_text().splitlines()
    assert lines[0] == "x,y,kind,angle" and len(lines) > 1
    assert Image.open(tmp_path / "05_binary.pgm").size == (400, 400)


def test_inspect_stops_at_thin(small_corpus, tmp_path):
    assert main(["inspect", str(small_corpus / "101_1.png"), "--out", str(tmp_path), "--stage", "thin"]) == 0
    assert sorted(p.name for p in tmp_path.iterdir())[-1] == "06_thin.pgm"
    assert len(list(tmp_path.iterdir())) == 6


def test_inspect_blank_image(tmp_path, capsys):
    blank = tmp_path / "blank.png"
    Image.fromarray(np.full((300, 300), 210, np.uint8)).save(blank)
    out = tmp_path / "out"
    assert main(["inspect", str(blank), "--out", str(out)]) == 2
    assert sorted(p.name for p in out.iterdir()) == ["01_enhanced.pgm", "02_orientation.pgm", "03_strength.pgm"]
    assert "NoCoreFound" in capsys.readouterr().err


def test_evaluate_grid_and_determinism(small_corpus, tmp_path, capsys):
    args = ["evaluate", str(small_corpus), "--grid-radius", "90,150", "--grid-descriptors", "80,120"]
    assert main([*args, "--out", str(tmp_path / "a")]) == 0
    assert main([*args, "--out", str(tmp_path / "b"), "--workers", "2"]) == 0
    a = (tmp_path / "a" / "report.tsv").read_bytes()
    assert a == (tmp_path / "b" / "report.tsv").read_bytes()
    assert len(a.decode().splitlines()) == 5
    for r in (90, 150):
        for k in (80, 120):
            assert (tmp_path / "a" / f"R{r}_K{k}" / "curve.csv").exists()


def test_evaluate_single_finger(tmp_path, capsys):
    data = tmp_path / "data"
    data.mkdir()
    finger = synthetic.make_finger(3)
    for i in (1, 2):
        Image.fromarray(synthetic.impression(finger, i)).save(data / f"101_{i}.png")
    assert main(["evaluate", str(data), "--out", str(tmp_path / "o")]) == 2
    assert "InsufficientData" in capsys.readouterr().err


def test_config_flag_and_override(tmp_path, small_corpus):
    conf = tmp_path / "c.conf"
    conf.write_text("roi_radius = 90\ndescriptor_count = 120\n")
    db = tmp_path / "db"
    img = str(small_corpus / "101_1.png")
    assert main(["enroll", img, "--db", str(db), "--config", str(conf), "--radius", "150"]) == 0
    t = load_template(db / "101_1.fptl")
    assert (t.radius, t.count) == (150, 120)
