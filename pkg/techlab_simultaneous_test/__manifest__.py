{
    'name': 'TechLab Simultaneous Test',
    'version': '1.0.0',
    'category': 'Statistics',
    'summary': 'Simultaneous two-sample test of mean vectors and covariance matrices for high-dimensional data',
    'description': """
    High-Dimensional Simultaneous Test
    ==================================

    This package tests H0: mu1 = mu2 and Sigma1 = Sigma2 for two samples
    whose dimension is comparable to the sample sizes:
    * Modified likelihood ratio (ML) test calibrated with random matrix theory
    * L2-norm-based comparator (HN) test
    * Fourth-cumulant estimation for non-Gaussian data

    Features:
    * Fisher-type matrix spectrum via a symmetric-definite pencil
    * Seeded, parallel Monte Carlo engine for empirical size and power
    * Reproduction of the size/power tables and null histograms
    * Command-line interface with CSV input and JSON/CSV reports
    """,
    'author': 'TechLab',
    'website': 'https://techlab.com',
    'depends': [],
    'data': [
        'data/report_schema.json',
    ],
    'external_dependencies': {
        'python': ['numpy', 'scipy', 'pandas', 'jsonschema'],
    },
    'license': 'LGPL-3',
}
