#!/usr/bin/env python3
"""Writes the detector corpora under data/detector/ (deterministic, seed 42).

Hand-written parts: the skill catalog, blacklist, system commands and the
benign transcripts. Generated parts: the labeled UIC utterances and the
attack transcripts derived from the benign ones.
"""
import json
import random
import sys
from pathlib import Path

OUT = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "data" / "detector"

SKILLS = [
    {
        "id": "sleep-sounds", "invocation_name": "sleep sounds", "display_name": "Sleep Sounds",
        "category": "health",
        "description": [
            "Sleep Sounds plays relaxing ambient sounds to help you fall asleep.",
            "Choose from rain, ocean waves, thunderstorm, fan, forest, fireplace and white noise.",
            "Each sound loops all night until you ask the skill to stop.",
            "Ask for a sound by name, for example play the rain sound.",
            "You can set a sleep timer so the sound fades out after a few hours.",
        ],
        "prompts": [
            "Hello, welcome to sleep sounds. Which sleep sound would you like today?",
            "Sorry, I do not understand. Which sound do you want today?",
            "Would you like rain, ocean waves or white noise?",
            "Playing the rain sound. Should I set a sleep timer?",
            "How many hours should the sound play?",
        ],
        "requests": [
            "play the {sound} sound", "{sound} please", "i want the {sound} sound", "{sound}",
            "can i hear the {sound} sound", "how about {sound}", "switch the sound to {sound}",
            "set the sleep timer for {hours} hours", "play it for {hours} hours", "make it fade out after {hours} hours",
            "loop the {sound} sound all night", "a louder {sound} sound", "play {sound} and {sound2}",
            "which sounds do you have", "no timer", "yes set a timer",
        ],
        "slots": {"sound": ["rain", "ocean waves", "white noise", "fan", "forest", "fireplace", "thunderstorm"],
                  "sound2": ["rain", "fan", "forest", "fireplace"],
                  "hours": ["two", "three", "eight", "six"]},
    },
    {
        "id": "cat-facts", "invocation_name": "cat facts", "display_name": "Cat Facts",
        "category": "education",
        "description": [
            "Cat Facts tells you a random fact about cats.",
            "Learn surprising facts about cat behavior, breeds like the Maine Coon, Siamese and Persian, and the history of house cats.",
            "Ask for another fact to hear more cat trivia.",
            "New facts about kittens and big cats are added every week.",
        ],
        "prompts": [
            "Welcome to cat facts. Here is your fact: cats sleep for about sixteen hours a day. Want another fact?",
            "A group of cats is called a clowder. Would you like another cat fact?",
            "Cats have five toes on their front paws. Do you want a fact about kittens or big cats?",
            "Which cat breed do you want to learn about?",
        ],
        "requests": [
            "another fact", "tell me another cat fact", "give me a fact about {breed} cats", "a fact about kittens",
            "why do cats {verb}", "tell me about {breed} cats", "more cat trivia", "one more fact please",
            "a fact about big cats", "what about {breed}", "how long do cats live", "facts about cat behavior",
            "do cats like {thing}", "what is a group of kittens called", "tell me about the {breed}",
            "tell me something about {breed} cats", "what about wild cats like {wild}",
        ],
        "slots": {"breed": ["siamese", "persian", "maine coon", "bengal", "sphynx"],
                  "wild": ["lions", "tigers", "cheetahs", "leopards"],
                  "verb": ["purr", "knead", "sleep so much", "hate water", "chase lasers"],
                  "thing": ["milk", "water", "catnip", "boxes"]},
    },
    {
        "id": "daily-horoscope", "invocation_name": "daily horoscope", "display_name": "Daily Horoscope",
        "category": "lifestyle",
        "description": [
            "Daily Horoscope reads the horoscope for your zodiac sign.",
            "Hear the daily, weekly or monthly reading for any of the twelve signs.",
            "Ask about love, career and lucky numbers for your sign.",
            "Tell the skill your birthday and it will find your star sign.",
        ],
        "prompts": [
            "Welcome to daily horoscope. What is your zodiac sign?",
            "Here is the reading for your sign: a good day to start new projects. Do you want your lucky numbers?",
            "Would you like the daily, weekly or monthly horoscope?",
            "Do you want to hear about love or career?",
        ],
        "requests": [
            "i am a {sign}", "{sign}", "read the horoscope for {sign}", "my sign is {sign}",
            "what are my lucky numbers", "the weekly reading", "the monthly horoscope", "tell me about love",
            "what about my career", "read {sign} for tomorrow", "my birthday is {month} {day}",
            "which sign is compatible with {sign}", "daily reading please", "what is my lucky color",
            "tell me about my {life}", "what does {sign} mean for my {life}", "how is my {life} looking",
        ],
        "slots": {"sign": ["aries", "taurus", "gemini", "leo", "virgo", "libra", "scorpio", "pisces", "capricorn"],
                  "life": ["love life", "career", "money", "health", "family"],
                  "month": ["march", "june", "october", "january"], "day": ["third", "twelfth", "twenty first"]},
    },
    {
        "id": "trivia-night", "invocation_name": "trivia night", "display_name": "Trivia Night",
        "category": "games",
        "description": [
            "Trivia Night is a quiz game with multiple choice questions.",
            "Answer questions about science, history, movies and sports to score points.",
            "Say the letter of your answer, a, b, c or d.",
            "Play a new round of ten questions or ask for your score.",
        ],
        "prompts": [
            "Welcome to trivia night. Pick a category: science, history, movies or sports.",
            "Question one: which planet is known as the red planet? a Venus, b Mars, c Jupiter or d Saturn.",
            "Correct! Your score is three points. Ready for the next question?",
            "Wrong answer, the correct answer was c. Want to play another round?",
        ],
        "requests": [
            "{category}", "let's do {category}", "the answer is {letter}", "{letter}", "is it {letter}",
            "i think {letter}", "next question", "what is my score", "repeat the question",
            "start a new round", "give me a {category} question", "skip this question", "play another round",
        ],
        "slots": {"category": ["science", "history", "movies", "sports"], "letter": ["a", "b", "c", "d"]},
    },
    {
        "id": "kitchen-helper", "invocation_name": "kitchen helper", "display_name": "Kitchen Helper",
        "category": "food",
        "description": [
            "Kitchen Helper finds recipes and walks you through cooking them step by step.",
            "Search recipes by ingredient, dish or cuisine.",
            "Ask for the ingredient list, the next step or the oven temperature.",
            "Convert cups, grams and ounces while you cook.",
            "Save favorite recipes for dinner later.",
        ],
        "prompts": [
            "Welcome to kitchen helper. What would you like to cook today?",
            "I found a recipe for chicken curry. Do you want the ingredients or the first step?",
            "Step one: preheat the oven to four hundred degrees. Say next when you are ready.",
            "Step two: chop the onions and garlic. Say next for the next step.",
        ],
        "requests": [
            "find a recipe for {dish}", "how do i make {dish}", "a recipe with {ingredient}", "read the ingredients",
            "next step", "repeat that step", "what temperature for the oven", "how many grams is a cup of {ingredient}",
            "convert {n} ounces to grams", "save this recipe", "something with {ingredient} for dinner",
            "what can i cook with {ingredient}", "go back a step", "how long to bake the {dish}",
        ],
        "slots": {"dish": ["lasagna", "chicken curry", "banana bread", "pancakes", "tomato soup"],
                  "ingredient": ["flour", "sugar", "chicken", "rice", "butter"], "n": ["four", "eight", "twelve"]},
    },
    {
        "id": "seven-minute-workout", "invocation_name": "seven minute workout", "display_name": "7-Minute Workout",
        "category": "health",
        "description": [
            "Seven Minute Workout guides you through a quick circuit of exercises.",
            "Exercises include jumping jacks, push ups, squats, planks and lunges.",
            "Each exercise lasts thirty seconds followed by a short rest.",
            "Pause the workout, skip an exercise or start over at any time.",
        ],
        "prompts": [
            "Welcome to seven minute workout. Are you ready to start?",
            "First exercise: jumping jacks for thirty seconds. Go!",
            "Rest for ten seconds. Next up: push ups.",
            "Great job. Do you want a harder workout or an easier one?",
        ],
        "requests": [
            "i am ready", "start the workout", "skip this exercise", "what is the next exercise",
            "how do i do {exercise}", "make it harder", "an easier workout", "rest a bit longer",
            "start over", "pause the workout", "how many {exercise} left", "do {exercise} next",
            "can we do {exercise} instead", "how much time is left",
        ],
        "slots": {"exercise": ["push ups", "squats", "planks", "lunges", "jumping jacks", "crunches"]},
    },
    {
        "id": "daily-meditation", "invocation_name": "daily meditation", "display_name": "Daily Meditation",
        "category": "health",
        "description": [
            "Daily Meditation offers short guided meditation sessions.",
            "Practice breathing exercises, body scans and mindfulness.",
            "Choose a session length of five, ten or twenty minutes.",
            "Calm music plays softly during every meditation.",
        ],
        "prompts": [
            "Welcome to daily meditation. How many minutes would you like to meditate?",
            "Let's begin. Breathe in slowly through your nose. Would you like a body scan next?",
            "Session complete. Would you like another breathing exercise?",
            "Do you prefer a morning session or an evening session?",
        ],
        "requests": [
            "{minutes} minutes", "a {minutes} minute session", "start a breathing exercise", "a body scan please",
            "something for stress", "an evening session", "a morning meditation", "help me calm down",
            "meditate for {minutes} minutes", "softer music", "a mindfulness session", "breathing for sleep",
            "make the music {softer}", "can the music be {softer}", "different music for this session", "no music this time",
            "play the calm music again", "how long is this session",
        ],
        "slots": {"minutes": ["five", "ten", "twenty"], "softer": ["softer", "quieter", "calmer", "louder"]},
    },
    {
        "id": "bedtime-stories", "invocation_name": "bedtime stories", "display_name": "Bedtime Stories",
        "category": "kids",
        "description": [
            "Bedtime Stories reads short stories for kids before bed.",
            "Pick stories about dragons, princesses, pirates, animals or space.",
            "Each story takes about five minutes to read.",
            "Ask for a new story or hear a favorite one again.",
        ],
        "prompts": [
            "Welcome to bedtime stories. Would you like a story about dragons, pirates or space?",
            "Once upon a time a little dragon could not breathe fire. The end. Want another story?",
            "Which story should I read tonight?",
            "Do you want a long story or a short story?",
        ],
        "requests": [
            "a story about {topic}", "read the {topic} story", "{topic}", "another story", "a short story",
            "a long story about {topic}", "read it again", "the one about the {topic}", "tell me a {topic} story",
            "a new story please", "what stories do you have", "a funny story about {topic}",
        ],
        "slots": {"topic": ["dragons", "pirates", "space", "princesses", "animals", "a brave bunny"]},
    },
    {
        "id": "word-of-the-day", "invocation_name": "word of the day", "display_name": "Word of the Day",
        "category": "education",
        "description": [
            "Word of the Day teaches a new vocabulary word every day.",
            "Hear the definition, the spelling and an example sentence.",
            "Quiz yourself on past words to build your vocabulary.",
        ],
        "prompts": [
            "Welcome to word of the day. Today's word is serendipity. Would you like the definition?",
            "Serendipity means finding something good by chance. Do you want an example sentence?",
            "Would you like to hear the spelling or take a quiz?",
            "Quiz time: what does ephemeral mean?",
        ],
        "requests": [
            "what does it mean", "spell it", "use it in a sentence", "give me an example sentence",
            "yesterday's word", "quiz me", "what does {word} mean", "it means {meaning}",
            "how do you spell {word}", "another word", "repeat the definition", "a harder word",
        ],
        "slots": {"word": ["ephemeral", "serendipity", "ubiquitous", "laconic"],
                  "meaning": ["short lived", "everywhere", "using few words", "lucky chance"]},
    },
    {
        "id": "flight-tracker", "invocation_name": "flight tracker", "display_name": "Flight Tracker",
        "category": "travel",
        "description": [
            "Flight Tracker gives live flight status for any airline.",
            "Ask for departure time, arrival time, gate and delays by flight number.",
            "Track a flight and hear when it lands.",
            "Check arrivals and departures for major airports.",
        ],
        "prompts": [
            "Welcome to flight tracker. Which flight number would you like to track?",
            "United flight two twenty is on time and departs from gate B twelve. Anything else about this flight?",
            "Which airline is the flight on?",
            "Do you want the arrival time or the departure gate?",
        ],
        "requests": [
            "track {airline} flight {number}", "flight {number}", "it's {airline}", "{airline} {number}",
            "is the flight delayed", "what gate does it leave from", "when does it land", "the arrival time",
            "departures from {airport}", "is {airline} {number} on time", "which terminal", "the departure gate",
            "what time does it {event}", "what time does {airline} {number} {event}", "when does the flight {event}",
            "what time is the {airline} flight to {airport}", "how long is the delay",
        ],
        "slots": {"airline": ["united", "delta", "american", "southwest", "jetblue"],
                  "number": ["two twenty", "fourteen", "eight oh one", "three fifty"],
                  "event": ["land", "arrive", "leave", "depart", "board"],
                  "airport": ["denver", "atlanta", "boston", "chicago"]},
    },
    {
        "id": "joke-box", "invocation_name": "joke box", "display_name": "Joke Box",
        "category": "entertainment",
        "description": [
            "Joke Box tells clean jokes for the whole family.",
            "Hear knock knock jokes, puns and riddles.",
            "Ask for another joke whenever you need a laugh.",
        ],
        "prompts": [
            "Welcome to joke box. Do you want a pun, a riddle or a knock knock joke?",
            "Why did the scarecrow win an award? Because he was outstanding in his field. Another joke?",
            "Knock knock.",
        ],
        "requests": [
            "a pun", "a riddle", "knock knock joke", "another joke", "who's there", "a joke about {topic}",
            "that was funny, one more", "a riddle about {topic}", "a pun about {topic}",
        ],
        "slots": {"topic": ["animals", "food", "school", "math"]},
    },
    {
        "id": "stock-ticker", "invocation_name": "stock ticker", "display_name": "Stock Ticker",
        "category": "finance",
        "description": [
            "Stock Ticker reads live stock prices and market summaries.",
            "Ask for the share price of any company by name or ticker symbol.",
            "Hear how the market indexes moved today.",
        ],
        "prompts": [
            "Welcome to stock ticker. Which company would you like a quote for?",
            "Apple is trading at one hundred ninety dollars, up one percent. Another stock?",
            "Do you want the market summary?",
        ],
        "requests": [
            "the price of {company}", "{company} stock", "how is {company} doing", "the market summary",
            "how did the dow do", "quote for {company}", "is {company} up today",
        ],
        "slots": {"company": ["apple", "microsoft", "tesla", "nvidia", "amazon stock"]},
    },
    {
        "id": "thunderstorm-sounds", "invocation_name": "thunderstorm sounds", "display_name": "Thunderstorm Sounds",
        "category": "health",
        "description": [
            "Thunderstorm Sounds plays the sound of a rolling thunderstorm with heavy rain.",
            "Fall asleep to distant thunder and rain on a tin roof.",
            "The storm plays all night on a seamless loop.",
        ],
        "prompts": ["Welcome to thunderstorm sounds. Shall I start the storm?", "Do you want heavy rain or distant thunder?"],
        "requests": ["start the storm", "heavy rain", "distant thunder", "louder thunder", "rain on the roof"],
        "slots": {},
    },
    {
        "id": "daily-quotes", "invocation_name": "daily quotes", "display_name": "Daily Quotes",
        "category": "lifestyle",
        "description": [
            "Daily Quotes shares an inspiring quote each day.",
            "Hear quotes from famous authors, leaders and athletes.",
            "Ask who said it or for another quote.",
        ],
        "prompts": ["Welcome to daily quotes. Here is today's quote. Want another one?", "Would you like a quote about success or about love?"],
        "requests": ["another quote", "who said that", "a quote about success", "a quote about love", "a quote from an athlete"],
        "slots": {},
    },
]

BLACKLIST = [
    "# System utterances a skill must not imitate. <silence> stands for an empty response.",
    "<silence>",
    "Goodbye.",
    "Goodbye, talk to you later.",
    "Exiting the skill.",
    "The skill has been closed.",
    "Okay, the session has ended.",
    "Sure, here is the skill you asked for.",
    "Opening the skill now.",
    "Launching the requested skill.",
    "Welcome back to the assistant.",
    "Here is your flash briefing.",
    "Here is the latest news.",
    "I recommend a skill for that.",
    "You might like a skill called that.",
    "Would you like to enable this skill?",
    "This skill has been enabled.",
    "Please say your account password to continue.",
    "Please verify your account by saying your pin.",
    "Your timer has been set.",
    "Now playing music from your library.",
    "There was a problem with the requested skill's response.",
]

SYSCMDS = [
    "# Commands addressed to the assistant. <name> expands to every catalog invocation name.",
    "open <name>",
    "launch <name>",
    "start <name>",
    "ask <name>",
    "<name> please",
    "open <name> please",
    "enable <name> skill",
    "what time is it",
    "what's the time",
    "what's the date today",
    "what's the weather",
    "what's the weather like tomorrow",
    "what's the forecast for this week",
    "will it rain today",
    "set a timer for ten minutes",
    "set an alarm for seven am",
    "cancel my timer",
    "turn up the volume",
    "turn down the volume",
    "volume level five",
    "mute",
    "goodbye alexa",
    "alexa stop",
    "alexa cancel",
    "what's in the news",
    "show me the news",
    "what's my flash briefing",
    "play music",
    "play some music on amazon music",
    "shuffle my playlist",
    "turn on the lights",
    "turn off the lights",
    "turn off the tv",
    "turn off bluetooth",
    "add milk to my shopping list",
    "what's on my calendar today",
    "call mom",
    "how's the traffic to work",
    "what can you do",
    "tell me a quote",
    "i'm home",
]

# Context-switch utterances generated for the labeled corpus.
SWITCH_TEMPLATES = [
    "open {other}", "open {other} please", "{other} please", "launch {other}", "start {other}",
    "alexa open {other}", "ask {other} for {anything}", "alexa ask {other}", "i want to use {other}", "enable {other}",
    "what's the weather in {city}", "what's the weather like", "will it rain in {city} tomorrow",
    "what's the forecast for {day}", "is it going to snow {day}", "how hot is it outside",
    "what time is it", "what's the time in {city}", "what's today's date", "what day is it",
    "set a timer for {n} minutes", "set an alarm for {n} am", "cancel the timer", "how much time is left on my timer",
    "turn the volume {updown}", "volume {n}", "turn it {updown}", "mute", "alexa louder",
    "what's in the news", "play the news", "read me the headlines", "what's my flash briefing", "show me the news",
    "play {artist} on amazon music", "play some {genre} music", "shuffle my {genre} playlist", "amazon music",
    "turn {onoff} the {device}", "dim the {device}", "switch off the {device}",
    "add {item} to my shopping list", "what's on my shopping list", "what's on my calendar", "remind me to {chore}",
    "call {person}", "send a message to {person}", "how's the traffic", "goodbye alexa", "alexa stop", "alexa cancel",
    "alexa what can you do", "i'm home", "tell me a quote", "what was the time", "what time",
    "i meant go back to the timer", "alexa {anything}",
]

SWITCH_SLOTS = {
    "city": ["seattle", "northridge", "chicago", "boston", "phoenix", "miami"],
    "day": ["tomorrow", "this weekend", "friday", "tonight"],
    "n": ["five", "ten", "seven", "twenty", "six"],
    "updown": ["up", "down"],
    "artist": ["taylor swift", "the beatles", "drake", "adele"],
    "genre": ["jazz", "rock", "classical", "country"],
    "onoff": ["on", "off"],
    "device": ["kitchen lights", "tv", "bedroom lights", "fan", "bluetooth", "thermostat"],
    "item": ["eggs", "milk", "paper towels", "coffee"],
    "chore": ["take out the trash", "call the dentist", "water the plants"],
    "person": ["mom", "dad", "john", "the office"],
    "anything": ["the weather", "a joke", "the news", "my reminders"],
}

OBSERVED_SWITCHES = [
    ("sleep-sounds", "Hello, welcome to soothing sleep sounds. Which sleep sound would you like today?", [
        "Switch off the TV.", "What time?", "What is the week's forecast?", "Show me the news."]),
    ("sleep-sounds", "Sorry, I do not understand. Which sound do you want today?", [
        "Turn off Bluetooth.", "Goodbye, Alexa.", "I meant walk back to the timer.", "Amazon music.",
        "What's the weather in Northridge?", "What's in the news?", "I'm home."]),
    ("sleep-sounds", "Hello, welcome to my sleep sounds. Which sleep sound would you like today?", [
        "Tell me a quote.", "What was the time?"]),
    ("sleep-sounds", "Hello, welcome to incredible fast sleep. Which sleep sound would you like today?", [
        "What's my flash briefing?"]),
]

# Benign sessions: (skill id, [skill, user, skill, user, ..., skill]).
BENIGN = [
    ("sleep-sounds", [
        "Hello, welcome to sleep sounds. Which sleep sound would you like today?",
        "Can I hear the ocean waves?",
        "Playing ocean waves. Should I set a sleep timer?",
        "Yes, for three hours.",
        "Okay, the ocean waves will fade out in three hours. Anything else?",
        "Actually switch to the rain sound.",
        "Switching to the rain sound with the same timer.",
        "Make the rain a bit heavier.",
        "Here is heavy rain on a tin roof.",
        "Which other sounds do you have?",
        "I have fireplace, forest, fan and white noise.",
        "The fireplace sound then.",
        "Playing the fireplace sound. Sweet dreams.",
        "Loop it all night instead of the timer.",
        "The fireplace sound will loop all night. Sleep well.",
    ]),
    ("cat-facts", [
        "Welcome to cat facts. Here is your fact: cats sleep for about sixteen hours a day. Want another fact?",
        "Yes, another fact.",
        "A group of cats is called a clowder. Would you like another cat fact?",
        "Tell me something about kittens.",
        "Kittens open their eyes when they are about a week old. Another one?",
        "Why do cats knead blankets?",
        "Kneading is a habit left over from kittenhood when cats nursed. Want a fact about a breed?",
        "Tell me about the Maine Coon.",
        "The Maine Coon is one of the largest house cat breeds. More facts?",
        "What about big cats like tigers?",
        "Tigers are the largest wild cats and love to swim. Want another fact?",
        "How long do house cats usually live?",
        "Indoor cats often live fifteen years or more.",
    ]),
    ("daily-horoscope", [
        "Welcome to daily horoscope. What is your zodiac sign?",
        "I'm a Scorpio.",
        "Scorpio, today is a good day to finish what you started. Do you want your lucky numbers?",
        "Sure, what are my lucky numbers?",
        "Your lucky numbers are seven, fourteen and twenty two. Would you like the weekly reading?",
        "Read the weekly one.",
        "This week brings surprises at work for Scorpio. Do you want to hear about love or career?",
        "Tell me about my love life.",
        "Romance looks bright on Friday. Anything else for your sign?",
        "Which sign is most compatible with Scorpio?",
        "Scorpio pairs well with Cancer and Pisces. Would you like another sign's reading?",
        "Read Pisces for tomorrow.",
        "Pisces, tomorrow favors quiet reflection and rest.",
    ]),
    ("trivia-night", [
        "Welcome to trivia night. Pick a category: science, history, movies or sports.",
        "Let's do science.",
        "Question one: which planet is known as the red planet? a Venus, b Mars, c Jupiter or d Saturn.",
        "B, Mars.",
        "Correct! Your score is one point. Question two: what gas do plants take in? a oxygen, b nitrogen, c carbon dioxide or d helium.",
        "I think it's c.",
        "Correct again! Ready for question three?",
        "Yes, next question.",
        "Question three: what is the hardest natural substance? a gold, b iron, c diamond or d quartz.",
        "Is it diamond?",
        "Right, diamond. Your score is three points. Want to switch categories?",
        "Let's try history.",
        "History question: who was the first president of the United States? a Lincoln, b Washington, c Adams or d Jefferson.",
        "Washington.",
        "Correct! You have four points. Another round?",
    ]),
    ("kitchen-helper", [
        "Welcome to kitchen helper. What would you like to cook today?",
        "How do I make banana bread?",
        "I found a recipe for banana bread. Do you want the ingredients or the first step?",
        "Read me the ingredients.",
        "You need three ripe bananas, two cups of flour, one cup of sugar, one egg and half a cup of butter.",
        "How many grams is a cup of flour?",
        "One cup of flour is about one hundred twenty grams.",
        "Okay, what's the first step?",
        "Step one: preheat the oven to three hundred fifty degrees. Say next when you are ready.",
        "Next step.",
        "Step two: mash the bananas and mix in the melted butter.",
        "How long does it bake?",
        "Bake the banana bread for about sixty minutes.",
    ]),
    ("seven-minute-workout", [
        "Welcome to seven minute workout. Are you ready to start?",
        "I'm ready.",
        "First exercise: jumping jacks for thirty seconds. Go!",
        "How do I do a plank properly?",
        "Keep your body straight from head to heels and hold your core tight. Next up: push ups.",
        "Can we do squats instead of push ups?",
        "Sure, squats for thirty seconds. Go!",
        "I need a longer rest.",
        "Resting for twenty seconds. Next up: lunges.",
        "Skip the lunges.",
        "Skipping lunges. Plank for thirty seconds. Go!",
        "How much time is left in the workout?",
        "Two minutes left. Last exercise: crunches for thirty seconds.",
    ]),
    ("daily-meditation", [
        "Welcome to daily meditation. How many minutes would you like to meditate?",
        "Ten minutes.",
        "Let's begin. Breathe in slowly through your nose. Would you like a body scan next?",
        "Yes, a body scan please.",
        "Relax your shoulders and notice your breathing. Session complete. Would you like another breathing exercise?",
        "Something for stress.",
        "Here is a calming breathing exercise for stress. Breathe in for four counts and out for six.",
        "Can the music be softer?",
        "Softer music is playing. Do you prefer a morning session or an evening session tomorrow?",
        "An evening session.",
        "Your evening meditation is saved for tomorrow. Would you like a short breathing exercise now?",
        "Yes, five minutes of breathing.",
        "Breathe in for four counts, hold, and breathe out slowly. Five minutes starting now.",
    ]),
    ("bedtime-stories", [
        "Welcome to bedtime stories. Would you like a story about dragons, pirates or space?",
        "A story about pirates.",
        "Captain Molly sailed the seas looking for a treasure map. The end. Want another story?",
        "Another story please.",
        "Which story should I read tonight?",
        "The one about the little dragon.",
        "Once upon a time a little dragon could not breathe fire. The end. Want another story?",
        "A short story about space.",
        "A small rocket flew to the moon and waved at the stars. The end.",
        "Read the dragon story again.",
        "Here is the little dragon story once more.",
        "A funny story about animals.",
        "A goat and a duck opened a bakery that only sold carrot cake. The end.",
    ]),
    ("word-of-the-day", [
        "Welcome to word of the day. Today's word is serendipity. Would you like the definition?",
        "What does it mean?",
        "Serendipity means finding something good by chance. Do you want an example sentence?",
        "Use it in a sentence.",
        "Meeting my best friend on the train was pure serendipity. Would you like to hear the spelling or take a quiz?",
        "How do you spell it?",
        "S E R E N D I P I T Y. Would you like a quiz on past words?",
        "Quiz me.",
        "Quiz time: what does ephemeral mean?",
        "Short lived.",
        "Correct, ephemeral means lasting a short time. Want yesterday's word?",
    ]),
    ("flight-tracker", [
        "Welcome to flight tracker. Which flight number would you like to track?",
        "Track United flight two twenty.",
        "United flight two twenty is on time and departs from gate B twelve. Anything else about this flight?",
        "When does it land?",
        "It lands in Denver at four fifteen pm. Do you want the arrival gate?",
        "Which terminal does it arrive at?",
        "It arrives at terminal B, gate forty one.",
        "Is Delta flight fourteen delayed?",
        "Delta flight fourteen is delayed by twenty minutes.",
        "What gate does it leave from?",
        "Delta fourteen departs from gate A nine.",
        "And what time does it arrive?",
        "Delta fourteen arrives in Atlanta at six ten pm.",
    ]),
]

# Utterances substituted for user turns: (benign session index, user turn number within that session).
SWITCH_ATTACKS = [
    (0, 1, "Alexa, what's the weather like tomorrow?"),
    (0, 3, "Open cat facts."),
    (1, 2, "Set a timer for ten minutes."),
    (1, 4, "Turn the volume down."),
    (2, 1, "What time is it?"),
    (2, 3, "Ask joke box for a joke."),
    (3, 2, "Launch stock ticker."),
    (3, 5, "What's in the news today?"),
    (4, 2, "Turn off the kitchen lights."),
    (5, 1, "Sleep sounds please."),
    (5, 3, "Add eggs to my shopping list."),
    (6, 2, "Start daily quotes."),
    (7, 1, "Play some jazz music."),
    (8, 2, "Open sleep sounds please."),
    (9, 3, "What's my flash briefing?"),
]

# Fake terminations: replace the final skill response of each benign session.
FAKE_TERMINATIONS = [
    "",
    "<speak><audio src=\"https://example.com/silence-60s.mp3\"/></speak>",
    "Goodbye!",
    "   ",
    "Alright, goodbye, talk to you later.",
    "<speak><break time=\"10s\"/></speak>",
    "Okay, exiting the skill now.",
    "",
    "Sure, here is the skill you asked for, launching it now.",
    "Okay, the session has ended. Goodbye.",
]

EXTRA_LEGIT = [
    "Sorry, I didn't catch that. Could you say it again?",
    "I can help with that. What would you like to do next?",
    "Thanks for playing trivia night. Your final score is eight points.",
    "Here is a recipe for lasagna. It serves six people.",
    "Sweet dreams, the forest sound is playing.",
    "That's all the facts for today. Come back tomorrow for more cat facts.",
    "Your flight is boarding soon at gate twenty three.",
    "Today's quote is from Maya Angelou.",
    "Knock knock. Who's there? Lettuce. Lettuce who? Lettuce in, it's cold out here.",
    "Apple is trading at one hundred ninety dollars, up one percent.",
]


def fill(template, slots, rng):
    out = template
    for key, values in slots.items():
        token = "{" + key + "}"
        while token in out:
            out = out.replace(token, rng.choice(values), 1)
    return out


def dump_jsonl(path, rows):
    with open(path, "w", encoding="utf-8") as f:
        for r in rows:
            f.write(json.dumps(r, ensure_ascii=False, sort_keys=False) + "\n")


def catalog_rows():
    keys = ("id", "invocation_name", "display_name", "author", "category", "description")
    rows = []
    for s in SKILLS:
        r = dict(s, author="skillguard-corpus")
        rows.append({k: r[k] for k in keys})
    return rows


FILLER = {"a", "an", "the", "i", "me", "my", "it", "is", "do", "to", "for", "of", "you", "what", "how", "please", "about"}


def content_words(text):
    words = "".join(c if c.isalnum() else " " for c in text.lower()).split()
    return {w for w in words if w not in FILLER}


def related_prompt(utterance, prompts, rng):
    """A prompt the utterance plausibly answers: one sharing a content word when possible."""
    words = content_words(utterance)
    related = [p for p in prompts if words & content_words(p)]
    return rng.choice(related or prompts)


def labels(rng, per_class=400):
    skills = {s["id"]: s for s in SKILLS}
    rows, seen = [], set()

    def add(utt, prior, sid, label):
        key = (utt.lower(), sid, label)
        if key in seen:
            return False
        seen.add(key)
        rows.append({"utterance": utt, "prior_response": prior, "skill_id": sid, "label": label})
        return True

    observed = 0
    for sid, prior, utts in OBSERVED_SWITCHES:
        for u in utts:
            observed += add(u, prior, sid, "switch")

    ids = [s["id"] for s in SKILLS]
    count = observed
    while count < per_class:
        sid = rng.choice(ids)
        s = skills[sid]
        other = rng.choice([x for x in SKILLS if x["id"] != sid])["invocation_name"]
        utt = fill(rng.choice(SWITCH_TEMPLATES), dict(SWITCH_SLOTS, other=[other]), rng)
        count += add(utt, rng.choice(s["prompts"]), sid, "switch")

    count = 0
    while count < per_class:
        sid = rng.choice(ids)
        s = skills[sid]
        utt = fill(rng.choice(s["requests"]), s["slots"], rng)
        prior = related_prompt(utt, s["prompts"], rng) if rng.random() < 0.9 else None
        count += add(utt, prior, sid, "no-switch")
    rng.shuffle(rows)
    return rows


def session(sid, texts, session_id, start=0.0):
    turns, t = [], start
    for i, text in enumerate(texts):
        turns.append({"role": "skill" if i % 2 == 0 else "user", "text": text, "timestamp": round(t, 1)})
        t += 4.0 + (i % 3)
    return {"session_id": session_id, "skill_id": sid, "turns": turns}


def main():
    rng = random.Random(42)
    OUT.mkdir(parents=True, exist_ok=True)
    dump_jsonl(OUT / "skills.jsonl", catalog_rows())
    (OUT / "blacklist.txt").write_text("\n".join(BLACKLIST) + "\n")
    (OUT / "syscmds.txt").write_text("\n".join(SYSCMDS) + "\n")

    benign = [session(sid, texts, f"benign-{i:02d}") for i, (sid, texts) in enumerate(BENIGN)]
    dump_jsonl(OUT / "transcripts_benign.jsonl", benign)

    attacks = []
    for n, (idx, user_turn, utt) in enumerate(SWITCH_ATTACKS):
        sid, texts = BENIGN[idx]
        pos = 2 * user_turn - 1
        assert pos < len(texts), (idx, user_turn)
        attacks.append(session(sid, texts[:pos] + [utt], f"switch-{n:02d}"))
    for n, response in enumerate(FAKE_TERMINATIONS):
        sid, texts = BENIGN[n]
        attacks.append(session(sid, texts[:-1] + [response], f"terminate-{n:02d}"))
    dump_jsonl(OUT / "transcripts_attack.jsonl", attacks)

    legit = []
    for s in SKILLS:
        legit.extend(s["prompts"])
    for _, texts in BENIGN:
        legit.extend(texts[0::2])
    legit.extend(EXTRA_LEGIT)
    legit = list(dict.fromkeys(legit))
    (OUT / "legit_responses.txt").write_text("\n".join(legit) + "\n")

    dump_jsonl(OUT / "uic_labels.jsonl", labels(rng))

    users = sum(len(t[1::2]) for _, t in BENIGN)
    print(f"benign sessions {len(benign)}, user utterances {users}, attacks {len(attacks)}", file=sys.stderr)


if __name__ == "__main__":
    main()
