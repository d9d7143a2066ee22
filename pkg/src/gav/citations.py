"""Result labels and short quote anchors attached to reports and certificates.

Reports name the published result each conclusion rests on, so that a reader
can look it up.  All such labels live here and nowhere else.
"""

from __future__ import annotations

CITATIONS = {
    "expmap": ("Section 2, exponential map", "\\phi_V\\phi_U = \\phi_{V+U}"),
    "localization": ("Lemma 2.1(iii)", "extends to a non-trivial exponential map"),
    "base_change": ("Lemma 2.1(iv)", "on $B\\otimes_k\\overline{k}$"),
    "dhm": ("Theorem 2.2", "induces a non-trivial, homogeneous exponential map"),
    "gr": ("Theorem 2.3", "induces an admissible $\\mathbb Z$-filtration"),
    "separable_multiple_root": ("Theorem 2.5", "at least one separable multiple root"),
    "phi12": ("Lemma 3.1", "define two exponential maps"),
    "centred_degree": ("Remark 3.3", "\\omega_{\\lambda_i}(x_i-\\lambda_i)=-1"),
    "ml": ("Proposition 3.4", "then $\\operatorname{ML}(A)=k[x_1,\\ldots,x_m]$"),
    "not_linear": ("Lemma 3.5", "not linear with respect to any system of coordinate"),
    "dk": ("Corollary 3.7", "Then $\\operatorname{DK}(A)=k[x_1,\\ldots,x_m,z,t]$"),
    "iso_linear": ("Theorem 3.8(ii)", "\\phi(x_i)= \\nu x_l^{\\prime} + \\mu"),
    "iso_roots": ("Theorem 3.8(iii)", "equal number of roots in $\\overline{k}$ with equal multiplicities"),
    "auto": ("Theorem 3.9", "satisfies conditions (i) and (iii), then $\\phi \\in \\operatorname{Aut}_k(A)$"),
    "stable": ("Theorem 3.10", "$D^{[1]}=R^{[3]}$"),
    "family": ("Corollary 3.11", "pairwise non-isomorphic varieties"),
}


def cite(key):
    label, quote = CITATIONS[key]
    return {"label": label, "quote": quote}


def cites(*keys):
    return [cite(k) for k in keys]
