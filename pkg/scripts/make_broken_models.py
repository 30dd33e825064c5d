"""Regenerate the perturbed matched-pair model files from the tm2 tangent double."""
from pathlib import Path

import yaml

from dlalg.fixtures import broken_m1, broken_m6, broken_m7
from dlalg.model import matched_pair_document

HEADERS = {
    "broken_m1": "tm2 tangent double with the anchor of the second algebroid shifted by d/dx2 on e1.",
    "broken_m6": "tm2 tangent double with one Christoffel symbol of nabla^BC shifted by 1.",
    "broken_m7": "tm2 tangent double with one entry of R_A shifted by 1.",
}

if __name__ == "__main__":
    out = Path(__file__).resolve().parent.parent / "models"
    for make in (broken_m1, broken_m6, broken_m7):
        mp = make()
        doc = matched_pair_document(mp, mp.ring.base_dim)
        text = f"# {HEADERS[mp.name]}\n# Generated by scripts/make_broken_models.py\n"
        text += yaml.safe_dump(doc, sort_keys=False, default_flow_style=False)
        (out / f"{mp.name}.model").write_text(text, encoding="utf-8")
