import re
from pathlib import Path

from fuzzyowl.diagnostics import CODES

DOCS = Path(__file__).resolve().parent.parent / "docs"


def test_diagnostics_table_lists_every_code():
    text = (DOCS / "diagnostics.md").read_text()
    listed = re.findall(r"^\| `([A-Z0-9_]+)` \|", text, re.M)
    assert listed == list(CODES)


def test_doc_links_resolve():
    readme = DOCS.parent / "README.md"
    for page in [readme, *DOCS.glob("*.md")]:
        for target in re.findall(r"\]\(([^)#:]+\.md)\)", page.read_text()):
            assert (page.parent / target).exists(), (page.name, target)
