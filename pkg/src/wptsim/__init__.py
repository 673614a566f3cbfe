"""Indoor near-field wireless power transfer simulator.

Models a physically large rectangular transmit array in a room with
specular wall/floor reflections (image sources) and diffuse scattering
(random point scatterers), and evaluates the path gain achieved by MRT
and beam-diversity precoding over spatial grids.
"""

__version__ = "0.1.0"
