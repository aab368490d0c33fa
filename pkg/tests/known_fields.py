"""Published field data used as reference values: (m, d_k, polynomial, zeta_k(-1), residue degrees above small primes)."""

FIELD_ROWS = [
(4,725,"x^4 - x^3 - 3x^2 + x + 1","2/15",{2:[4],3:[4],5:[2],7:[2,2],11:[1,1,2],13:[2,2]}),
(4,1125,"x^4 - x^3 - 4x^2 + 4x + 1","4/15",{2:[4],3:[2],7:[4],11:[2,2]}),
(4,1957,"x^4 - 4x^2 - x + 1","2/3",{2:[4],3:[1,3],5:[4],7:[1,3]}),
(4,2000,"x^4 - 5x^2 + 5","2/3",{2:[2],3:[4],5:[1],7:[4],13:[4]}),
(4,2225,"x^4 - x^3 - 5x^2 + 2x + 4","4/5",{2:[2,2],3:[4],11:[2,2]}),
(4,2304,"x^4 - 4x^2 + 1","1",{2:[1],3:[2],5:[2,2]}),
(4,2525,"x^4 - 2x^3 - 4x^2 + 5x + 5","4/3",{2:[4],3:[4],5:[1,1],7:[4]}),
(4,2624,"x^4 - 2x^3 - 3x^2 + 2x + 1","1",{2:[2],3:[4],7:[1,1,2]}),
(4,2777,"x^4 - x^3 - 4x^2 + x + 2","4/3",{2:[1,3],3:[4],7:[4]}),
(4,3600,"x^4 - 2x^3 - 7x^2 + 8x + 1","8/5",{}),
(4,3981,"x^4 - x^3 - 4x^2 + 2x + 1","2",{2:[4],3:[1,2],5:[1,3]}),
(4,4205,"x^4 - x^3 - 5x^2 - x + 1","2",{2:[4],3:[4],5:[1,2]}),
(4,4352,"x^4 - 6x^2 - 4x + 2","8/3",{2:[1],3:[4]}),
(4,9909,"x^4 - 6x^2 - 3x + 3","8",{2:[4]}),
(4,10512,"x^4 - 7x^2 - 6x + 1","8",{2:[2]}),
(5,24217,"x^5 - 5x^3 - x^2 + 3x + 1","-4/3",{2:[5],3:[5],5:[1,4],7:[5],11:[2,3],13:[2,3]}),
(5,36497,"x^5 - 2x^4 - 3x^3 + 5x^2 + x - 1","-8/3",{2:[5],3:[5],5:[2,3],7:[2,3]}),
(5,38569,"x^5 - 5x^3 + 4x - 1","-8/3",{2:[5],3:[5],5:[5],7:[1,4]}),
(5,81509,"x^5 - x^4 - 5x^3 + 3x^2 + 5x - 2","-32/3",{}),
(5,106069,"x^5-2x^4 -4x^3 + 7x^2 + 3x-4","-16",{}),
(6,300125,"x^6-x^5-7x^4+2x^3+7x^2-2x-1","296/105",{2:[6],3:[6],5:[3],7:[2],11:[3,3]}),
(6,371293,"x^6-x^5-5x^4+4x^3+6x^2-3x-1","152/39",{2:[6],3:[3,3],5:[2,2,2],7:[6]}),
(6,434581,"x^6-2x^5-4x^4+5x^3+4x^2-2x-1","104/21",{2:[6],3:[3,3],5:[3,3],7:[2]}),
(6,453789,"x^6-x^5-6x^4+6x^3+8x^2-8x+1","16/3",{2:[6],3:[3],5:[3,3],7:[1]}),
(6,485125,"x^6-2x^5-4x^4+8x^3+2x^2-5x+1","88/15",{2:[6],3:[2,4],5:[3]}),
(6,592661,"x^6-x^5-5x^4+4x^3+5x^2-2x-1","8",{2:[6],3:[6],5:[2,4]}),
(6,703493,"x^6-2x^5-5x^4+11x^3+2x^2-9x+1","72/7",{2:[6],3:[6]}),
(6,722000,"x^6-x^5-6x^4+7x^3+4x^2-5x+1","56/5",{2:[2],3:[6]}),
(6,810448,"x^6 -3x^5-2x^4+9x^3-5x+1","40/3",{2:[2],3:[3,3]}),
(6,820125,"x^6 - 9x^4 - 4x^3 + 9x^2 + 3x - 1","584/45",{2:[6],3:[2]}),
(6,905177,"x^6-x^5-7x^4+9x^3+7x^2-9x-1","320/21",{2:[3,3],3:[6]}),
(6,966125,"x^6-x^5-6x^4+4x^3+8x^2-1","256/15",{2:[6]}),
(6,980125,"x^6-x^5-6x^4+6x^3+7x^2-5x-1","256/15",{2:[6]}),
(6,1075648,"x^6 - 7x^4 + 14x^2 - 7","416/21",{2:[3]}),
(6,1081856,"x^6-6x^4-2x^3+7x^2+2x-1","20",{2:[3]}),
(6,1134389,"x^6-2x^5-4x^4 + 6x^3 + 4x^2 - 3x - 1","64/3",{2:[6]}),
(6,1202933,"x^6 - 6x^4 - 2x^3 + 6x^2 + x - 1","24",{2:[6]}),
(6,1229312,"x^6 - 10x^4 + 24x^2 - 8","172/7",{2:[3]}),
(6,1241125,"x^6 - 7x^4 - 2x^3 + 11x^2 + 7x + 1","376/15",{2:[6]}),
(6,1259712,"x^6 - 6x^4 + 9x^2 - 3","248/9",{2:[3]}),
(6,1279733,"x^6 - 2x^5 - 6x^4 + 10x^3 + 10x^2 - 11x - 1","544/21",{2:[6]}),
(6,1292517,"x^6 - 6x^4 - x^3 + 6x^2 - 1","232/9",{2:[6]}),
(6,1312625,"x^6 - x^5 - 7x^4 + 7x^3 + 12x^2 - 12x - 1","416/15",{2:[2,4]}),
(6,1387029,"x^6 - 3x^5 - 2x^4 + 9x^3 - x^2 - 4x + 1","32",{2:[6]}),
(6,1397493,"x^6 - 3x^5 - 3x^4 + 10x^3 + 3x^2 - 6x + 1","32",{2:[6]}),
(6,1416125,"x^6-2x^5-5x^4+9x^3+6x^2-9x+1","152/5",{2:[2]}),
(6,1528713,"x^6-3x^5-3x^4+7x^3+3x^2-3x-1","304/9",{2:[3,3]}),
]

# Published cells that disagree with an independent recomputation, with the
# recomputed value. Each one is traced in the decisions ledger.
ZETA_ERRATA = {2525: "14/15"}
SPLITTING_ERRATA = {(36497, 3): [1, 4], (1416125, 2): [6]}

# Candidate list for n = 4 as published: (d_k, ramified ideal tags)
PUBLISHED_CANDIDATES = [
    (1957, ["3^1", "7^1"]),
    (2000, ["2^2", "5^1"]),
    (2304, ["2^1", "3^2"]),
    (38569, ["7^1"]),
    (106069, ["2^1"]),
    (453789, []),
    (1387029, []),
    (1397493, []),
]

# Root discriminant ceiling f(m), truncated to three decimals, and minimal root discriminants
ROOT_DISC_TABLE = {
    4: ("10.329", 5.189),
    5: ("10.570", 6.809),
    6: ("10.734", 8.182),
    7: ("10.853", 11.051),
    8: ("10.943", 11.385),
}
