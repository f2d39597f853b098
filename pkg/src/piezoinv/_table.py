"""Transcription of the 260-entry hemitropic functional basis.

Notation, one entry per ``;``-separated item:

* ``I2``, ``I4``, ``I6``, ``I10`` -- named invariants (A:A, B:B, c.c, A(c,c,c))
* ``tr D2H``                      -- trace of the matrix product D D H
* ``u.D2v``                       -- u . (D D v)
* ``u.e[DH]``                     -- u . eps[D H]
* ``[u,Dw,Bc]``                   -- triple product of u, D w and B c

Capital letters are the matrices B, D, F, G, H (a trailing digit is a power);
lower case letters are the vectors u, v, w, c.
"""

TABLE = {
    2: "I2; u.u; v.v; u.v; tr D2",
    3: "u.w; v.w; tr D3; tr DB; u.Du; v.Dv; u.Dv",
    4: (
        "I4; w.w; u.c; v.c; [u,v,w]; tr H2; tr F2; tr G2;"
        "tr HF; tr HG; tr FG; tr D2H; tr D2F; tr D2G; u.Hu;"
        "v.Hv; u.Fu; v.Fv; u.Gu; v.Gv; u.D2u; v.D2v;"
        "u.e[DH]; u.e[DG]; v.e[DH]; [u,v,Du]; [u,v,Dv]"
    ),
    5: (
        "w.c; [u,v,c]; tr DH2; tr DF2; tr DG2; tr DHF; tr DHG;"
        "tr DHB; tr DFG; tr DFB; tr DGB; w.Dw; u.e[BH];"
        "u.e[HG]; u.e[FG]; v.e[BH]; v.e[FG]; w.e[DF];"
        "w.e[DG]; u.e[D2H]; u.e[D2F]; u.e[D2G]; v.e[D2H];"
        "v.e[D2F]; v.e[D2G]; u.Fw; u.Gw; v.Gw; [u,v,Hu];"
        "[u,v,Fu]; [u,v,Gu]; [u,w,Du]; [v,w,Dv]; [u,v,Hv];"
        "[u,v,Gv]"
    ),
    6: (
        "I6; [u,w,c]; [v,w,c]; tr H3; tr F3; tr G3; tr H2F;"
        "tr H2G; tr H2B; tr F2G; tr HF2; tr HG2; tr HB2; tr FG2;"
        "tr FB2; tr GB2; tr D2H2; tr D2F2; tr D2G2; tr HFG;"
        "w.Bw; w.Hw; w.Fw; w.Gw; u.H2u; v.H2v;"
        "u.F2u; v.F2v; v.G2v; u.B2u; v.B2v; w.D2w;"
        "[u,Du,D2u]; [v,Dv,D2v]; w.e[HF]; w.e[HG]; w.e[FG];"
        "c.e[DF]; c.e[DG]; w.e[D2B]; w.e[D2F]; w.e[D2G];"
        "u.e[DH2]; u.e[DF2]; u.e[DG2]; v.e[DH2]; v.e[DF2];"
        "v.e[DG2]; [u,Du,Bu]; [u,Du,Hu]; [u,Du,Fu]; [u,Du,Gu];"
        "[v,Dv,Fv]; [v,Dv,Gv]; v.Fc; [u,w,Bu]; [u,w,Gu];"
        "[v,Dv,Bv]; [v,Dv,Hv]; [v,w,Bv]; [v,w,Fv]; [u,c,Du];"
        "[v,c,Dv]; [u,w,Dw]; [v,w,Dw]"
    ),
    7: (
        "c.Dc; c.e[FG]; u.e[B2H]; u.e[B2F]; u.e[B2G];"
        "u.e[H2F]; u.e[H2G]; u.e[F2G]; v.e[B2H]; v.e[B2G];"
        "v.e[H2F]; v.e[H2G]; v.e[F2G]; c.e[D2B]; c.e[D2H];"
        "c.e[D2F]; c.e[D2G]; u.e[BH2]; u.e[BF2]; u.e[BG2];"
        "u.e[HG2]; v.e[BH2]; v.e[BF2]; v.e[BG2]; v.e[HF2];"
        "v.e[FG2]; w.e[DB2]; w.e[DH2]; w.e[DF2]; w.e[DG2];"
        "[u,Bu,Hu]; [u,Bu,Fu]; [u,Bu,Gu]; [u,Hu,Fu];"
        "[u,Hu,Gu]; [u,Fu,Gu]; [v,Bv,Hv]; [v,Bv,Fv];"
        "[v,Bv,Gv]; [v,Hv,Fv]; [v,Hv,Gv]; [v,Fv,Gv]; w.Fc;"
        "w.Gc; [u,c,Hu]; [v,c,Hv]; [u,w,Bw]; [u,w,Hw];"
        "[u,w,Fw]; [u,w,Gw]; [v,w,Bw]; [v,w,Hw]; [v,w,Fw];"
        "[v,w,Gw]"
    ),
    8: (
        "tr H2F2; tr H2G2; tr H2B2; c.Hc; c.Fc; c.Gc;"
        "c.D2c; w.H2w; w.e[B2F]; w.e[B2G]; w.e[H2F];"
        "w.e[H2G]; w.e[F2G]; w.e[BH2]; w.e[BF2]; w.e[BG2];"
        "w.e[FG2]; c.e[DH2]; c.e[DF2]; c.e[DG2]; [w,c,Dw];"
        "[u,c,Dc]; [v,c,Dc]"
    ),
    9: (
        "[u,Bu,B2u]; [u,Fu,F2u]; [u,Gu,G2u]; [v,Bv,B2v];"
        "[v,Gv,G2v]; [w,Dw,D2w]; c.e[B2F]; c.e[B2G];"
        "c.e[H2F]; c.e[H2G]; c.e[BH2]; c.e[BF2]; c.e[BG2];"
        "[w,Dw,Bw]; [w,Dw,Hw]; [w,Dw,Fw]; [w,Dw,Gw];"
        "[w,c,Bw]; [w,c,Hw]; [w,c,Fw]; [w,c,Gw];"
        "[u,c,Gc]; [v,c,Fc]"
    ),
    10: (
        "I10; [w,Bw,Hw]; [w,Bw,Fw]; [w,Bw,Gw];"
        "[w,Hw,Fw]; [w,Hw,Gw]; [w,Fw,Gw]; [w,c,Bc];"
        "[w,c,Fc]; [w,c,Gc]"
    ),
    # the printed second and third entries read [c,Dw,Bc] and [c,Dw,Hc], which
    # weigh 11; the Dc reading matches the row's degree and its Fc/Gc siblings
    12: "[w,Bw,B2w]; [c,Dc,Bc]; [c,Dc,Hc]; [c,Dc,Fc]; [c,Dc,Gc]",
    13: "[c,Bc,Hc]; [c,Bc,Fc]; [c,Bc,Gc]; [c,Hc,Fc]; [c,Hc,Gc]",
    15: "[c,Bc,B2c]",
}

# per-degree counts of the basis
DEGREE_COUNTS = {2: 5, 3: 7, 4: 27, 5: 35, 6: 65, 7: 54, 8: 23, 9: 23, 10: 10, 12: 5, 13: 5, 15: 1}

# entries that survive for a harmonic (H3) tensor
HARMONIC_ENTRIES = ("I2", "I4", "I6", "I10", "[c,Bc,B2c]")

# the listed basis of totally symmetric tensors
SYMMETRIC_ENTRIES = (
    "I2", "u.u",
    "I4", "u.c", "tr F2", "u.Fu",
    "I6", "tr F3", "tr FB2", "u.F2u", "u.B2u",
    "u.e[BF2]", "[u,Bu,Fu]",
    "c.Fc",
    "[u,Bu,B2u]", "[u,Fu,F2u]", "c.e[B2F]", "c.e[BF2]",
    "I10",
    "[c,Bc,B2c]",
)
