#!/usr/bin/env python3
"""Writes data/domain.json: schemas, objects, initial scenes, task plans and
explanation pools for the shipped kitchen and living-room domain."""

import json
import pathlib

ROOT = pathlib.Path(__file__).resolve().parent.parent

PREDICATES = [
    ("on_top", "relation"), ("inside", "relation"), ("holding", "relation"),
    ("contains", "relation"), ("next_to", "relation"), ("has_state", "state"),
]

OBJECTS = {
    "agent": ["robot"],
    "fixture": ["table", "counter", "shelf", "tv_stand"],
    "appliance": ["stove", "microwave", "coffee_machine", "toaster", "fridge", "television", "lamp"],
    "substance": ["water", "coffee"],
    "item": ["pot", "cup", "mug", "potato", "bread", "plate", "bowl", "lettuce", "tomato", "knife",
             "egg", "pan", "watering_can", "plant", "remote_control", "book", "apple", "sponge",
             "spoon"],
}

SCHEMAS = [
    ("pick_up", ["O", "S"], ["on_top(O,S)"], ["holding(robot,O)", "!on_top(O,S)"]),
    ("put_down", ["O", "S"], ["holding(robot,O)"], ["on_top(O,S)", "!holding(robot,O)"]),
    ("fill", ["O", "L"], ["holding(robot,O)"], ["contains(O,L)", "!has_state(O,empty)"]),
    ("pour", ["O", "T"], ["holding(robot,O)", "contains(O,water)"],
     ["!contains(O,water)", "has_state(O,empty)", "has_state(T,watered)", "!has_state(T,dry)"]),
    ("put_in", ["O", "C"], ["holding(robot,O)", "!has_state(C,closed)"],
     ["inside(O,C)", "!holding(robot,O)"]),
    ("take_out", ["O", "C"], ["inside(O,C)", "!has_state(C,closed)"],
     ["holding(robot,O)", "!inside(O,C)"]),
    ("slice", ["O", "K"], ["holding(robot,K)", "!has_state(O,sliced)"], ["has_state(O,sliced)"]),
    ("brew", ["D", "O"], ["on_top(O,D)", "has_state(D,on)"],
     ["contains(O,coffee)", "!has_state(O,empty)"]),
    ("turn_on", ["D"], ["has_state(D,off)"], ["has_state(D,on)", "!has_state(D,off)"]),
    ("turn_off", ["D"], ["has_state(D,on)"], ["has_state(D,off)", "!has_state(D,on)"]),
    ("open", ["C"], ["has_state(C,closed)"], ["has_state(C,open)", "!has_state(C,closed)"]),
    ("close", ["C"], ["has_state(C,open)"], ["has_state(C,closed)", "!has_state(C,open)"]),
]


def scene(nodes, edges):
    return {
        "nodes": [{"name": n, "states": [["has_state", s] for s in states]}
                  for n, states in nodes.items()],
        "edges": [list(e) for e in edges],
    }


def plan(*steps):
    return [{"name": s[0], "args": list(s[1:])} for s in steps]


TASKS = {}


def task(name, group, nodes, edges, steps, explanations):
    TASKS[name] = (group, scene(nodes, edges), plan(*steps), explanations)


task("boil_water", "counterfactual",
     {"robot": [], "pot": ["empty"], "counter": [], "stove": ["off"], "water": []},
     [("on_top", "pot", "counter")],
     [("pick_up", "pot", "counter"), ("fill", "pot", "water"), ("put_down", "pot", "stove"),
      ("turn_on", "stove"), ("turn_off", "stove")],
     ["The robot could not locate the pot.",
      "The pot was still on the counter, so the robot could not reach the stove.",
      "The pot was on the stove but the stove was turned off.",
      "The robot was holding the pot when it tried to use the stove.",
      "The pot was empty because the robot forgot to fill the pot.",
      "The pot contained water but the stove was switched off.",
      "The stove was turned on.",
      "The robot forgot to turn on the stove.",
      "The robot picked up the pot and then dropped it.",
      "The robot dropped the pot.",
      "The robot did not pick up the pot.",
      "The robot never filled the pot, so the pot was empty.",
      "The robot filled the pot but could not find the stove.",
      "The robot failed to complete boil water because it was unable to perform fill pot water at step 1.",
      "The robot failed to complete boil water because it was unable to perform put down pot stove at step 2.",
      "The robot failed to complete boil water because it was unable to perform turn on stove at step 3.",
      "The apple was on the counter and the robot did not detect the pot.",
      "The robot put the pot on the stove.",
      "The pot was in the sink so the robot failed to detect the pot.",
      "The robot turned off the stove, which was too early.",
      "A sponge was blocking the pot.",
      "The robot was not holding the pot.",
      "The robot tried to turn off the stove before it could turn on the stove.",
      "The robot tried to turn on the stove before it could turn off the stove."])

task("heat_potato", "counterfactual",
     {"robot": [], "potato": [], "counter": [], "microwave": ["closed", "off"]},
     [("on_top", "potato", "counter")],
     [("open", "microwave"), ("pick_up", "potato", "counter"), ("put_in", "potato", "microwave"),
      ("close", "microwave"), ("turn_on", "microwave"), ("turn_off", "microwave")],
     ["The microwave was closed so the robot could not put the potato inside.",
      "The robot forgot to open the microwave.",
      "The robot opened the microwave.",
      "The potato was still on the counter.",
      "The potato was inside the microwave but the microwave was turned off.",
      "The microwave was open while heating.",
      "The robot could not locate the potato.",
      "The robot was holding the potato.",
      "The robot dropped the potato, so it fell on the floor.",
      "The robot never picked up the potato.",
      "The robot did not close the microwave.",
      "The microwave was switched on.",
      "The potato was not in the microwave.",
      "The robot picked up the potato but failed to detect the microwave.",
      "The robot failed to complete heat potato because it was unable to perform put in potato microwave at step 2.",
      "The robot failed to complete heat potato because it was unable to perform close microwave at step 3.",
      "The robot failed to complete heat potato because it was unable to perform pick up potato counter at step 1.",
      "The robot failed to complete heat potato because it was unable to perform turn on microwave at step 4.",
      "A book was on top of the potato.",
      "The apple was blocking the potato.",
      "The robot put the potato in the microwave.",
      "The robot turned on the microwave before closing it.",
      "The robot tried to close the microwave before it could open the microwave.",
      "The robot tried to open the microwave before it could close the microwave."])

task("make_coffee", "counterfactual",
     {"robot": [], "mug": ["empty"], "table": [], "coffee_machine": ["off"], "coffee": []},
     [("on_top", "mug", "table")],
     [("pick_up", "mug", "table"), ("put_down", "mug", "coffee_machine"),
      ("turn_on", "coffee_machine"), ("brew", "coffee_machine", "mug"),
      ("turn_off", "coffee_machine")],
     ["The mug was still on the table.",
      "The robot could not find the mug.",
      "The mug was on the coffee machine but the coffee machine was turned off.",
      "The coffee machine was switched on.",
      "The robot forgot to turn on the coffee machine.",
      "The mug was empty.",
      "The mug contained coffee.",
      "The robot was still holding the mug.",
      "The robot picked up the mug.",
      "The robot did not put down the mug.",
      "The robot dropped the mug.",
      "The robot put the mug on the coffee machine.",
      "The robot could not locate the coffee machine.",
      "The robot turned off the coffee machine before the mug was full of coffee.",
      "The robot failed to complete make coffee because it was unable to perform put down mug coffee machine at step 1.",
      "The robot failed to complete make coffee because it was unable to perform turn on coffee machine at step 2.",
      "The robot failed to complete make coffee because it was unable to perform brew coffee machine mug at step 3.",
      "The robot failed to complete make coffee because it was unable to perform pick up mug table at step 0.",
      "A book was on top of the mug.",
      "The spoon was blocking the mug.",
      "The mug was in the sink, so the robot never picked up the mug.",
      "The robot turned on the coffee machine.",
      "The robot tried to turn off the coffee machine before it could turn on the coffee machine.",
      "The robot tried to put down the mug before it could pick up the mug."])

task("toast_bread", "counterfactual",
     {"robot": [], "bread": [], "counter": [], "toaster": ["off"], "plate": []},
     [("on_top", "bread", "counter"), ("on_top", "plate", "counter")],
     [("pick_up", "bread", "counter"), ("put_in", "bread", "toaster"), ("turn_on", "toaster"),
      ("turn_off", "toaster"), ("take_out", "bread", "toaster"), ("put_down", "bread", "plate")],
     ["The bread was still on the counter.",
      "The robot could not locate the bread.",
      "The bread was inside the toaster but the toaster was turned off.",
      "The toaster was switched on.",
      "The robot forgot to turn on the toaster.",
      "The robot was holding the bread.",
      "The robot picked up the bread.",
      "The robot dropped the bread.",
      "The robot never put the bread in the toaster.",
      "The bread was not in the toaster.",
      "The robot took the bread out too early.",
      "The bread was on the plate.",
      "The plate was on the counter.",
      "The robot could not find the plate.",
      "The robot failed to complete toast bread because it was unable to perform put in bread toaster at step 1.",
      "The robot failed to complete toast bread because it was unable to perform turn on toaster at step 2.",
      "The robot failed to complete toast bread because it was unable to perform take out bread toaster at step 4.",
      "The robot failed to complete toast bread because it was unable to perform put down bread plate at step 5.",
      "The apple was on top of the bread.",
      "A knife was blocking the bread.",
      "The robot turned off the toaster before the bread was ready.",
      "The robot did not pick up the bread.",
      "The robot tried to turn off the toaster before it could turn on the toaster.",
      "The robot tried to turn on the toaster before it could turn off the toaster."])

task("make_salad", "heldout",
     {"robot": [], "knife": [], "lettuce": [], "tomato": [], "bowl": [], "counter": []},
     [("on_top", "knife", "counter"), ("on_top", "lettuce", "counter"),
      ("on_top", "tomato", "counter"), ("on_top", "bowl", "counter")],
     [("pick_up", "knife", "counter"), ("slice", "lettuce", "knife"), ("slice", "tomato", "knife"),
      ("put_down", "knife", "counter"), ("pick_up", "lettuce", "counter"),
      ("put_in", "lettuce", "bowl")],
     ["The robot could not find the knife.",
      "The knife was still on the counter.",
      "The lettuce was sliced.",
      "The tomato was sliced.",
      "The robot forgot to slice the tomato.",
      "The robot was holding the knife.",
      "The robot dropped the knife.",
      "The lettuce was in the bowl.",
      "The robot could not locate the bowl.",
      "The robot never picked up the lettuce.",
      "The robot failed to complete make salad because it was unable to perform slice tomato knife at step 2.",
      "The robot failed to complete make salad because it was unable to perform put in lettuce bowl at step 5.",
      "A book was on top of the lettuce.",
      "The robot sliced the lettuce."])

task("warm_water", "heldout",
     {"robot": [], "cup": ["empty"], "table": [], "microwave": ["closed", "off"], "water": []},
     [("on_top", "cup", "table")],
     [("pick_up", "cup", "table"), ("fill", "cup", "water"), ("open", "microwave"),
      ("put_in", "cup", "microwave"), ("close", "microwave"), ("turn_on", "microwave")],
     ["The cup was empty.",
      "The cup contained water.",
      "The robot forgot to fill the cup.",
      "The microwave was closed.",
      "The robot could not locate the cup.",
      "The cup was inside the microwave.",
      "The robot forgot to open the microwave.",
      "The microwave was switched on.",
      "The robot was holding the cup.",
      "The robot failed to complete warm water because it was unable to perform open microwave at step 2.",
      "The robot failed to complete warm water because it was unable to perform put in cup microwave at step 3.",
      "The cup was still on the table.",
      "The robot did not turn on the microwave."])

task("store_egg", "heldout",
     {"robot": [], "egg": [], "counter": [], "fridge": ["closed"]},
     [("on_top", "egg", "counter")],
     [("open", "fridge"), ("pick_up", "egg", "counter"), ("put_in", "egg", "fridge"),
      ("close", "fridge")],
     ["The fridge was closed.",
      "The robot forgot to open the fridge.",
      "The egg was still on the counter.",
      "The robot could not find the egg.",
      "The egg was in the fridge.",
      "The robot dropped the egg.",
      "The robot was holding the egg.",
      "The fridge was open.",
      "The robot failed to complete store egg because it was unable to perform put in egg fridge at step 2.",
      "The robot failed to complete store egg because it was unable to perform open fridge at step 0.",
      "The robot never closed the fridge."])

task("water_plant", "extra",
     {"robot": [], "watering_can": ["empty"], "shelf": [], "plant": ["dry"], "table": [],
      "water": []},
     [("on_top", "watering_can", "shelf"), ("on_top", "plant", "table")],
     [("pick_up", "watering_can", "shelf"), ("fill", "watering_can", "water"),
      ("pour", "watering_can", "plant"), ("put_down", "watering_can", "shelf")],
     ["The plant was dry.",
      "The plant was watered.",
      "The watering can was empty.",
      "The robot forgot to fill the watering can.",
      "The robot could not locate the watering can.",
      "The watering can was still on the shelf.",
      "The robot was holding the watering can.",
      "The robot failed to complete water plant because it was unable to perform pour watering can plant at step 2.",
      "The robot failed to complete water plant because it was unable to perform fill watering can water at step 1."])

task("cook_egg", "extra",
     {"robot": [], "pan": [], "egg": [], "counter": [], "stove": ["off"]},
     [("on_top", "pan", "counter"), ("on_top", "egg", "counter")],
     [("pick_up", "pan", "counter"), ("put_down", "pan", "stove"), ("pick_up", "egg", "counter"),
      ("put_in", "egg", "pan"), ("turn_on", "stove"), ("turn_off", "stove")],
     ["The pan was still on the counter.",
      "The egg was in the pan.",
      "The stove was turned off.",
      "The robot forgot to turn on the stove.",
      "The robot could not find the egg.",
      "The robot dropped the egg.",
      "The robot failed to complete cook egg because it was unable to perform put in egg pan at step 3.",
      "The pan was on the stove."])

task("switch_devices", "extra",
     {"robot": [], "remote_control": [], "table": [], "television": ["on"], "lamp": ["off"],
      "tv_stand": []},
     [("on_top", "remote_control", "table"), ("on_top", "television", "tv_stand")],
     [("pick_up", "remote_control", "table"), ("turn_off", "television"),
      ("put_down", "remote_control", "table"), ("turn_on", "lamp")],
     ["The robot could not locate the remote control.",
      "The book is blocking the remote control.",
      "The television was switched off.",
      "The television was turned on.",
      "The lamp was turned off.",
      "The robot was holding the remote control.",
      "The remote control was on the table.",
      "The robot failed to complete switch devices because it was unable to perform pick up remote control table at step 0.",
      "The robot failed to complete switch devices because it was unable to perform turn off television at step 1.",
      "The robot forgot to turn on the lamp."])


def main():
    domain = {
        "lexicon": "starter.lex",
        "predicates": [{"name": n, "arity": 2, "kind": k} for n, k in PREDICATES],
        "objects": [{"name": o, "kind": k} for k, names in OBJECTS.items() for o in names],
        "schemas": [{"name": n, "params": p, "preconditions": pre, "effects": eff}
                    for n, p, pre, eff in SCHEMAS],
        "initial_graphs": {name: t[1] for name, t in TASKS.items()},
        "tasks": {name: {"group": t[0], "plan": t[2], "explanations": t[3]}
                  for name, t in TASKS.items()},
    }
    out = ROOT / "data" / "domain.json"
    out.write_text(json.dumps(domain, indent=2) + "\n")


if __name__ == "__main__":
    main()
