from . import sample
from . import spectrum
from . import calibration
from . import ml_test
from . import hn_test
from . import simulation
from . import tables
from . import report
