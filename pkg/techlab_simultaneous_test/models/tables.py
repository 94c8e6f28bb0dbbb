"""Scenario grids of the size and power tables with their published rates.

Table 1 is the empirical size under Model I with a = 0, table 2 the power
under Model I over a grid of a, table 3 the power under Model II. Rates are
(ML, HN) pairs at alpha = 0.05 from 10,000 Gamma replications; the ML
columns use the lower-tail rejection rule.
"""
from ..exceptions import InputError

REGIME_TRIPLES = (
    ('y1>1,y2>1', ((25, 35, 40), (50, 70, 80), (100, 140, 160), (200, 280, 320))),
    ('y1>1,y2<1', ((25, 35, 30), (50, 70, 60), (100, 140, 120), (200, 280, 240))),
    ('y1<1,y2>1', ((35, 25, 30), (70, 50, 60), (140, 100, 120), (280, 200, 240))),
    ('y1<1,y2<1', ((25, 35, 20), (50, 70, 40), (100, 140, 80), (200, 280, 160))),
)

POWER_A_VALUES = {
    'y1>1,y2>1': (5.0, 10.0, 15.0, 20.0),
    'y1>1,y2<1': (5.0, 10.0, 15.0, 20.0),
    'y1<1,y2>1': (5.0, 10.0, 15.0, 20.0),
    'y1<1,y2<1': (20.0, 40.0, 60.0, 80.0),
}

TABLES = (1, 2, 3)

# ML rates below reject for z < -z_alpha; the HN rates are upper-tailed
TABLE_ALTERNATIVE = 'less'

# (n1, n2, p, a) -> (ML rate, HN rate)
PUBLISHED_RATES = {
    1: {
        (25, 35, 40, 0.0): (0.0639, 0.1335),
        (50, 70, 80, 0.0): (0.0566, 0.1431),
        (100, 140, 160, 0.0): (0.0559, 0.1384),
        (200, 280, 320, 0.0): (0.0496, 0.1474),
        (25, 35, 30, 0.0): (0.0572, 0.1375),
        (50, 70, 60, 0.0): (0.0573, 0.146),
        (100, 140, 120, 0.0): (0.0533, 0.1384),
        (200, 280, 240, 0.0): (0.0526, 0.1461),
        (35, 25, 30, 0.0): (0.0694, 0.14),
        (70, 50, 60, 0.0): (0.063, 0.1383),
        (140, 100, 120, 0.0): (0.0582, 0.1407),
        (280, 200, 240, 0.0): (0.0498, 0.1399),
        (25, 35, 20, 0.0): (0.062, 0.1313),
        (50, 70, 40, 0.0): (0.0549, 0.138),
        (100, 140, 80, 0.0): (0.0539, 0.1509),
        (200, 280, 160, 0.0): (0.0543, 0.1501),
    },
    2: {
        (25, 35, 40, 5.0): (0.2271, 0.1405),
        (25, 35, 40, 10.0): (0.4884, 0.1769),
        (25, 35, 40, 15.0): (0.752, 0.2478),
        (25, 35, 40, 20.0): (0.9061, 0.3066),
        (50, 70, 80, 5.0): (0.2153, 0.145),
        (50, 70, 80, 10.0): (0.5129, 0.1707),
        (50, 70, 80, 15.0): (0.7863, 0.2147),
        (50, 70, 80, 20.0): (0.9416, 0.2623),
        (100, 140, 160, 5.0): (0.2202, 0.1423),
        (100, 140, 160, 10.0): (0.5168, 0.161),
        (100, 140, 160, 15.0): (0.7954, 0.1822),
        (100, 140, 160, 20.0): (0.9514, 0.2065),
        (200, 280, 320, 5.0): (0.2139, 0.1491),
        (200, 280, 320, 10.0): (0.5232, 0.1586),
        (200, 280, 320, 15.0): (0.8096, 0.1759),
        (200, 280, 320, 20.0): (0.9548, 0.1916),
        (25, 35, 30, 5.0): (0.1307, 0.1407),
        (25, 35, 30, 10.0): (0.2615, 0.1845),
        (25, 35, 30, 15.0): (0.4316, 0.2358),
        (25, 35, 30, 20.0): (0.6376, 0.3104),
        (50, 70, 60, 5.0): (0.1266, 0.1454),
        (50, 70, 60, 10.0): (0.2607, 0.1742),
        (50, 70, 60, 15.0): (0.4455, 0.2102),
        (50, 70, 60, 20.0): (0.6425, 0.2619),
        (100, 140, 120, 5.0): (0.1229, 0.14),
        (100, 140, 120, 10.0): (0.2454, 0.1559),
        (100, 140, 120, 15.0): (0.4358, 0.1859),
        (100, 140, 120, 20.0): (0.6292, 0.2173),
        (200, 280, 240, 5.0): (0.1255, 0.1447),
        (200, 280, 240, 10.0): (0.2467, 0.1555),
        (200, 280, 240, 15.0): (0.4287, 0.1709),
        (200, 280, 240, 20.0): (0.6146, 0.1804),
        (35, 25, 30, 5.0): (0.1124, 0.1538),
        (35, 25, 30, 10.0): (0.1463, 0.2044),
        (35, 25, 30, 15.0): (0.1843, 0.2531),
        (35, 25, 30, 20.0): (0.2121, 0.3028),
        (70, 50, 60, 5.0): (0.1018, 0.1478),
        (70, 50, 60, 10.0): (0.1557, 0.1856),
        (70, 50, 60, 15.0): (0.2116, 0.2113),
        (70, 50, 60, 20.0): (0.274, 0.2437),
        (140, 100, 120, 5.0): (0.1017, 0.1554),
        (140, 100, 120, 10.0): (0.1575, 0.1645),
        (140, 100, 120, 15.0): (0.2372, 0.1841),
        (140, 100, 120, 20.0): (0.3074, 0.1999),
        (280, 200, 240, 5.0): (0.102, 0.1518),
        (280, 200, 240, 10.0): (0.1587, 0.1605),
        (280, 200, 240, 15.0): (0.2419, 0.1679),
        (280, 200, 240, 20.0): (0.3519, 0.1695),
        (25, 35, 20, 20.0): (0.2594, 0.3225),
        (25, 35, 20, 40.0): (0.7719, 0.6086),
        (25, 35, 20, 60.0): (0.9825, 0.8227),
        (25, 35, 20, 80.0): (0.9998, 0.9198),
        (50, 70, 40, 20.0): (0.1628, 0.2562),
        (50, 70, 40, 40.0): (0.6072, 0.5245),
        (50, 70, 40, 60.0): (0.956, 0.7605),
        (50, 70, 40, 80.0): (0.9986, 0.8929),
        (100, 140, 80, 20.0): (0.1115, 0.221),
        (100, 140, 80, 40.0): (0.3607, 0.4123),
        (100, 140, 80, 60.0): (0.7895, 0.6354),
        (100, 140, 80, 80.0): (0.9862, 0.8),
        (200, 280, 160, 20.0): (0.0795, 0.1867),
        (200, 280, 160, 40.0): (0.1903, 0.3043),
        (200, 280, 160, 60.0): (0.4757, 0.476),
        (200, 280, 160, 80.0): (0.8164, 0.652),
    },
    3: {
        (25, 35, 40, 0.0): (0.8896, 0.1542),
        (50, 70, 80, 0.0): (0.984, 0.1525),
        (100, 140, 160, 0.0): (0.9985, 0.1509),
        (200, 280, 320, 0.0): (0.9999, 0.1558),
        (25, 35, 30, 0.0): (0.7217, 0.165),
        (50, 70, 60, 0.0): (0.9197, 0.1692),
        (100, 140, 120, 0.0): (0.9868, 0.1605),
        (200, 280, 240, 0.0): (0.9987, 0.1626),
        (35, 25, 30, 0.0): (0.7168, 0.1545),
        (70, 50, 60, 0.0): (0.9146, 0.1588),
        (140, 100, 120, 0.0): (0.985, 0.1687),
        (280, 200, 240, 0.0): (0.999, 0.1634),
        (25, 35, 20, 0.0): (0.8778, 0.1757),
        (50, 70, 40, 0.0): (0.9897, 0.1736),
        (100, 140, 80, 0.0): (0.9998, 0.1716),
        (200, 280, 160, 0.0): (1.0, 0.1684),
    },
}


def table_grid(table):
    """
    Cells of a table in published order

    Returns:
        list of (regime, kind, n1, n2, p, a) tuples; kind is 'I' or 'II'
    """
    cells = []
    for regime, triples in REGIME_TRIPLES:
        for n1, n2, p in triples:
            if table == 1:
                cells.append((regime, 'I', n1, n2, p, 0.0))
            elif table == 2:
                cells.extend((regime, 'I', n1, n2, p, a) for a in POWER_A_VALUES[regime])
            elif table == 3:
                cells.append((regime, 'II', n1, n2, p, 0.0))
            else:
                raise InputError('Unknown table: %r (expected one of 1, 2, 3)' % table)
    return cells
