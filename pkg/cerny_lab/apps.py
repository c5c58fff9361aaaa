from django.apps import AppConfig
from django.utils.translation import gettext_lazy as _


class CernyLabConfig(AppConfig):
    name = "cerny_lab"
    verbose_name = _("Cerny Lab: synchronizing automata analysis")
