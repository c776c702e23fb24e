# Functions package initialization
