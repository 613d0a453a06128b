# Bullshark DAG Simulator
