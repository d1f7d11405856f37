from fractions import Fraction

from rpq import (
    chakrabarty_jagannathan,
    jagannathan_srinivasa,
    q_deformation,
    quesne,
)

Q_HALF = q_deformation(Fraction(1, 2))
Q_THREEQ = q_deformation(Fraction(3, 4))
JS = jagannathan_srinivasa(Fraction(9, 10), Fraction(1, 2))
QUESNE = quesne(Fraction(9, 10), Fraction(1, 2))
CJ = chakrabarty_jagannathan(Fraction(9, 10), Fraction(1, 2))

ALL_PRESETS = (JS, Q_HALF, QUESNE, CJ)
TAU1_ONE_PRESETS = (Q_HALF, Q_THREEQ)
