"""Byte-exact golden comparisons for the table and eval outputs.

The golden files were generated once and are cross-validated against the
transcribed reference tables by the polyring tests; any rendering drift
fails here.
"""

from pathlib import Path

from wolstenholme.cli import main

GOLDEN = Path(__file__).parent / "golden"

CASES = [
    (
        "coeff_table_p11_m7_n7.txt",
        ["table", "coeff-table", "-p", "11", "-m", "7", "-n", "7", "-f", "text"],
    ),
    (
        "coeff_table_p11_m6_n9.txt",
        ["table", "coeff-table", "-p", "11", "-m", "6", "-n", "9", "-f", "text"],
    ),
    (
        "sum_table_p11_m7_n7.txt",
        ["table", "sum-table", "-p", "11", "-m", "7", "-n", "7", "-f", "text"],
    ),
    (
        "sum_table_p11_m6_n9.txt",
        ["table", "sum-table", "-p", "11", "-m", "6", "-n", "9", "-f", "text"],
    ),
    (
        "eval_p17_ratio.txt",
        ["eval", "-p", "17", "(7+k)^9 / ((3+k)^13 (8+k)^8)", "--strategy", "all"],
    ),
    (
        "eval_p17_product.txt",
        ["eval", "-p", "17", "(14+k)^3 (10+k)^8 (4+k)^9", "--strategy", "all"],
    ),
    (
        "eval_p23_triple.txt",
        ["eval", "-p", "23", "1/((7+k)^16 (13+k)^17 (18+k)^19)", "--strategy", "all"],
    ),
]


def test_golden_outputs(capsys):
    for filename, argv in CASES:
        assert main(argv) == 0
        out = capsys.readouterr().out
        want = (GOLDEN / filename).read_text(encoding="utf-8")
        assert out == want, f"golden drift in {filename}"
