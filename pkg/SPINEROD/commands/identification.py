import argparse
from typing import Optional

from SPINEROD.rod.core import annulus_second_moment
from SPINEROD.rod.spine import modulus_from_deflection, modulus_from_tip_deflection
from SPINEROD.utils.actions import Outcome, Message

class Identification():
    """
    Young's modulus from a cantilever bending test.
    """
    def register(self, subparsers):
        identify = subparsers.add_parser("identify", help="identify Young's modulus from a load-cell reading",
                                         description=self.identify.__doc__)
        identify.add_argument("--force", type=float, required=True, help="load-cell force in N")
        identify.add_argument("--length", type=float, required=True, help="cantilever length in m")
        identify.add_argument("--deflection", type=float, required=True, help="measured deflection in m")
        identify.add_argument("--radius", type=float, required=True, help="outer radius of the section in m")
        identify.add_argument("--inner-radius", type=float, default=0.0, help="inner radius for a hollow section in m")
        identify.add_argument("--position", type=float, default=None, help="where the force acts, in m from the clamp (default: the tip)")
        identify.set_defaults(handler=self.identify)

    def identify(self, args : argparse.Namespace) -> Outcome:
        """
        Inverts the cantilever deflection formula for E. A solid section
        loaded at the tip uses the closed form for a circular rod.
        """
        return identify_modulus(args.force, args.length, args.deflection, args.radius, args.inner_radius, args.position)

def identify_modulus(force : float, length : float, deflection : float, radius : float,
                     inner_radius : float = 0.0, position : Optional[float] = None) -> Outcome:
    if inner_radius == 0 and position is None:
        E = modulus_from_tip_deflection(force, length, radius, deflection)
    else:
        x = length if position is None else position
        E = modulus_from_deflection(force, length, x, deflection, annulus_second_moment(radius, inner_radius))
    return Message(f"E = {E:.6g} Pa ({E / 1e6:.4f} MPa)")
