from dataclasses import dataclass, field


@dataclass(frozen=True)
class Diagnosis:
    """
    Resultado de descartar causas para un defecto concreto.

    - candidates: disyuntos del puente que siguen siendo posibles
    - entailed: clases de causa que ya se pueden demostrar
    - consistent: False si los descartes contradicen la KB; entonces
      candidates y entailed quedan vacíos
    """

    defect: str
    defect_class: str
    ruled_out: tuple = ()
    candidates: tuple = ()
    entailed: tuple = ()
    consistent: bool = True
    disjuncts: tuple = field(default=(), repr=False)
