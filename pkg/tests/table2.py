"""Printed rows of the published NLP-model efficiency table, in printed order.

(name, theta_ccr, theta_bcc, scale_efficiency, ccr_eff, bcc_eff, rts)
"""

from dealab.dea import DmuReport, Rts

ROWS = [
    ("glove-50-linear", 1.000, 1.000, 1.000, True, True, "CRS"),
    ("tfidf-1000-linear", 1.000, 1.000, 1.000, True, True, "CRS"),
    ("roberta-base, lr=1e-4", 0.501, 1.000, 0.501, False, True, "DRS"),
    ("distilroberta-base, lr=1e-5", 0.499, 1.000, 0.499, False, True, "DRS"),
    ("tfidf-10000-linear", 0.999, 1.000, 0.999, False, False, None),
    ("tfidf-5000-linear", 0.999, 1.000, 0.999, False, False, None),
    ("tfidf-500-linear", 0.999, 1.000, 0.999, False, False, None),
    ("tfidf-15000-linear", 0.999, 1.000, 0.999, False, False, None),
    ("glove-100-linear", 0.952, 0.961, 0.990, False, False, None),
    ("roberta-base, lr=1e-5", 0.460, 0.919, 0.500, False, False, None),
    ("bert-base-uncased, lr=1e-4", 0.486, 0.913, 0.533, False, False, None),
    ("distilroberta-base, lr=1e-4", 0.479, 0.863, 0.555, False, False, None),
    ("glove-200-linear", 0.841, 0.845, 0.996, False, False, None),
    ("distilbert-base-uncased, lr=1e-5", 0.460, 0.842, 0.546, False, False, None),
    ("bert-base-uncased, lr=1e-5", 0.437, 0.841, 0.519, False, False, None),
    ("bert-large-uncased, lr=1e-5", 0.385, 0.835, 0.461, False, False, None),
    ("glove-300-linear", 0.827, 0.834, 0.991, False, False, None),
    ("distilbert-base-uncased, lr=1e-3", 0.466, 0.819, 0.569, False, False, None),
    ("distilbert-base-uncased, lr=1e-4", 0.473, 0.803, 0.588, False, False, None),
    ("bert-large-uncased, lr=1e-4", 0.411, 0.741, 0.554, False, False, None),
    ("distilroberta-base, lr=1e-3", 0.452, 0.679, 0.665, False, False, None),
    ("roberta-base, lr=1e-3", 0.436, 0.654, 0.666, False, False, None),
    ("bert-base-uncased, lr=1e-3", 0.410, 0.543, 0.756, False, False, None),
    ("bert-large-uncased, lr=1e-3", 0.225, 0.312, 0.721, False, False, None),
]

ORDER = [r[0] for r in ROWS]


def reports(rows=ROWS):
    """DmuReports carrying the printed scores and flags."""
    out = []
    for name, te, pte, se, ce, be, rts in rows:
        out.append(
            DmuReport(
                name=name,
                theta_ccr=te,
                theta_bcc=pte,
                scale_efficiency=se,
                ccr_efficient=ce,
                bcc_efficient=be,
                weakly_efficient_ccr=te == 1.0 and not ce,
                weakly_efficient_bcc=pte == 1.0 and not be,
                rts=None if rts is None else Rts(rts),
                reference_set_ccr=(name,) if ce else (),
                reference_set_bcc=(name,) if be else (),
            )
        )
    return out
