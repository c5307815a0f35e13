"""Universal coding of integers: codes, codecs and expansion-factor analysis."""
