"""Exact exterior algebra at a point, Cartan's test, and the isometric embedding system."""

from .cartan import (CharacterReport, CoframeSplit, cartan_verdict, polar_codims,
                     tableau_characters, tangent_codim)
from .cartan_lemma import solve as cartan_lemma_solve
from .connection import (ConnectionData, curvature_form, first_bianchi_defect,
                         second_bianchi_defect, torsion_form)
from .curvature import RiemannTensor, SecondFundamentalForm, gauss_map
from .exterior import (Coframe, Form, FormMatrix, StructureDifferential, evaluate,
                       exterior_derivative, interior_product, wedge)
from .ideal import Flag, GeneratorSet, IntegralElement, close, is_integral, polar_space

__version__ = "0.1.0"
