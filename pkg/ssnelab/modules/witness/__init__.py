from .WitnessBuilder import WitnessBuilder
