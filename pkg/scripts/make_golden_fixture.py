"""Regenerate src/termweaver/data/golden/golden.tsv from the raw texts below.

Rows come from the bundled tagger, except the worked-example sentence whose
rows are pinned by hand.
"""

from pathlib import Path

from termweaver.preprocess import preprocess_document

PINNED = [
    ("Nuclear", "JJ", "nuclear", "nuclear"),
    ("factor", "NN", "factor", "factor"),
    ("of", "IN", "of", "of"),
    ("activated", "VB", "activate", "activ"),
    ("T", "NN", "t", "t"),
    ("cells", "NN", "cell", "cell"),
    ("(", "-LRB-", "(", "("),
    ("NFAT", "NN", "nfat", "nfat"),
    (")", "-RRB-", ")", ")"),
    ("is", "VB", "be", "be"),
    ("a", "DT", "a", "a"),
    ("transcription", "NN", "transcription", "transcript"),
    ("factor", "NN", "factor", "factor"),
    ("which", "WDT", "which", "which"),
    ("is", "VB", "be", "be"),
    ("considered", "VB", "consider", "consid"),
    ("to", "TO", "to", "to"),
    ("be", "VB", "be", "be"),
    ("an", "DT", "an", "an"),
    ("important", "JJ", "important", "import"),
    ("regulator", "NN", "regulator", "regul"),
    ("in", "IN", "in", "in"),
    ("early", "JJ", "early", "earli"),
    ("T", "NN", "t", "t"),
    ("cell", "NN", "cell", "cell"),
    ("activation", "NN", "activation", "activ"),
    (".", ".", ".", "."),
]

EXAMPLE = (
    "Nuclear factor of activated T-cells (NFAT) is a transcription factor which is "
    "considered to be an important regulator in early T-cell activation."
)

PREFIX = (
    "We studied the regulation of interleukin 2 expression in human lymphocytes. "
    "Results were obtained from stimulated Jurkat lines and from primary blood samples. "
    "Several proteins bind to the promoter region during stimulation by phorbol esters."
)

DOCS = {
    "90368794": [PREFIX, EXAMPLE, "Its binding site was mapped by footprinting."],
    "90412288": [
        "Protein kinase C (PKC) is activated by phorbol esters.",
        "The transcription factor was detected in nuclear extracts.",
        "Tumour necrosis factor induces the transcription factor rapidly.",
    ],
    "90412301": [
        "The PKC inhibitor staurosporine blocked T cell activation completely.",
        "Tumor necrosis factor alpha was elevated.",
    ],
    "90533107": [
        "Gene transcription requires a transcription factor.",
        "The transcriptional factor binds DNA.",
        "Transcription of different genes was reduced.",
        "Another transcription factor was identified.",
    ],
    "90611452": [
        "The T cell activation was measured.",
        "We observed activation of T cells after stimulation.",
        "The T cell activation was strong.",
    ],
    "91023876": [
        "Hodgkin's lymphoma was diagnosed.",
        "Hodgkin lymphomas are rare.",
        "The retinoic acid receptor type alpha binds retinoic acid.",
        "The retinoic acid alpha receptor was cloned.",
    ],
    "91177230": [
        "Also known as Aspirin, acetylsalicylic acid (ASA) is a commonly used drug for the "
        "treatment of pain and fever due to various causes.",
        "The patient was given acetyl salicylic acid and nitroglycerin.",
        "The serum response was weak.",
        "Serums responses and sera responses were compared.",
    ],
}


def rows_for(sentence):
    if sentence == EXAMPLE:
        return PINNED
    doc = preprocess_document("x", sentence)
    return [(t.surface, t.tag.full, t.lemma, t.stem) for s in doc.sentences for t in s.tokens]


def main():
    out = []
    for doc_id, sentences in DOCS.items():
        out.append(f"#doc {doc_id}")
        for sentence in sentences:
            out.append(f"#text {sentence}")
            out.extend("\t".join(r) for r in rows_for(sentence))
            out.append("")
    target = Path(__file__).resolve().parents[1] / "src/termweaver/data/golden/golden.tsv"
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text("\n".join(out), "utf-8")
    print(target)


if __name__ == "__main__":
    main()
